#include "sixth/quadrature.hpp"

#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace sixth::oracle {

namespace {

using Gauss16 = boost::math::quadrature::gauss<long double, QuadratureRule::points_per_panel>;

}  // namespace

QuadratureRule QuadratureRule::composite(int panels) {
  if (panels < 1) throw InvalidArgument("quadrature needs at least one panel");
  QuadratureRule rule;
  rule.panels = panels;
  // Boost stores the non-negative half of the symmetric rule.
  const auto& abscissa = Gauss16::abscissa();
  const auto& weight = Gauss16::weights();
  std::vector<long double> ref_nodes, ref_weights;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (abscissa[i] == 0.0L) {
      ref_nodes.push_back(0.0L);
      ref_weights.push_back(weight[i]);
      continue;
    }
    ref_nodes.push_back(-abscissa[i]);
    ref_weights.push_back(weight[i]);
    ref_nodes.push_back(abscissa[i]);
    ref_weights.push_back(weight[i]);
  }
  const long double h = 2.0L / panels;
  rule.nodes.reserve(ref_nodes.size() * panels);
  rule.weights.reserve(ref_nodes.size() * panels);
  for (int p = 0; p < panels; ++p) {
    const long double mid = -1.0L + (p + 0.5L) * h;
    for (std::size_t i = 0; i < ref_nodes.size(); ++i) {
      rule.nodes.push_back(mid + 0.5L * h * ref_nodes[i]);
      rule.weights.push_back(0.5L * h * ref_weights[i]);
    }
  }
  return rule;
}

int panels_for_wavenumber(double wavenumber) {
  const double wavelengths = std::fabs(wavenumber) / std::numbers::pi;  // over length 2
  const int panels = static_cast<int>(std::ceil(4.0 * wavelengths));
  return panels < 4 ? 4 : panels;
}

double inner_product(const std::function<double(double)>& f,
                     const std::function<double(double)>& g, double tol, double wavenumber) {
  if (!(tol >= 1e-14)) throw InvalidArgument("quadrature tolerance must be >= 1e-14");
  auto integrand = [&](long double x) -> long double {
    const double xd = static_cast<double>(x);
    return static_cast<long double>(f(xd)) * g(xd);
  };
  return static_cast<double>(adaptive_integrate(integrand, tol, wavenumber).value);
}

}  // namespace sixth::oracle
