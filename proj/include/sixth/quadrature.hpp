#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "sixth/errors.hpp"

namespace sixth::oracle {

/// Composite 16-point Gauss-Legendre rule on [-1, 1] with equal panels.
struct QuadratureRule {
  static constexpr int points_per_panel = 16;

  int panels = 0;
  std::vector<long double> nodes;
  std::vector<long double> weights;

  static QuadratureRule composite(int panels);

  template <class F>
  long double integrate(F&& f) const {
    long double sum = 0.0L;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Smallest panel count giving at least four panels per wavelength 2*pi/k
/// over [-1, 1], and never fewer than four panels.
int panels_for_wavenumber(double wavenumber);

struct AdaptiveResult {
  long double value = 0.0L;
  int panels = 0;
};

/// Doubles the panel count until two successive composite results differ by
/// less than tol * max(1, integral of |f|). Throws NumericalError
/// (convergence) past max_panels.
template <class F>
AdaptiveResult adaptive_integrate(F&& f, double tol, double wavenumber = 0.0,
                                  int max_panels = 1 << 15) {
  int panels = panels_for_wavenumber(wavenumber);
  auto rule = QuadratureRule::composite(panels);
  long double previous = rule.integrate(f);
  while (panels < max_panels) {
    panels *= 2;
    rule = QuadratureRule::composite(panels);
    long double magnitude = 0.0L;
    long double value = 0.0L;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const long double fx = f(rule.nodes[i]);
      value += rule.weights[i] * fx;
      magnitude += rule.weights[i] * std::fabs(fx);
    }
    if (std::fabs(value - previous) < tol * std::fmax(1.0L, magnitude)) {
      return {value, panels};
    }
    previous = value;
  }
  throw NumericalError(NumericalError::Kind::convergence,
                       "quadrature did not reach tolerance " + std::to_string(tol) + " within " +
                           std::to_string(max_panels) + " panels");
}

/// L2 inner product on [-1, 1]. tol >= 1e-14.
double inner_product(const std::function<double(double)>& f,
                     const std::function<double(double)>& g, double tol = 1e-12,
                     double wavenumber = 0.0);

}  // namespace sixth::oracle
