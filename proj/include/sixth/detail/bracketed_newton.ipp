#pragma once

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "sixth/errors.hpp"

namespace sixth {

// f returns {value, derivative}. Falls back to bisection whenever the Newton
// step leaves the bracket or fails to halve the residual interval.
template <class F>
double bracketed_newton(F&& f, double lo, double hi, double x0, double rel_tol,
                        int max_iter, int* iterations) {
  auto [flo, dlo] = f(lo);
  auto [fhi, dhi] = f(hi);
  (void)dlo;
  (void)dhi;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericalError(NumericalError::Kind::bracketing,
                         "no sign change on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
  }
  // orient so that f(lo) < 0
  if (flo > 0.0) std::swap(lo, hi);

  double x = (x0 > std::fmin(lo, hi) && x0 < std::fmax(lo, hi)) ? x0 : 0.5 * (lo + hi);
  double dx_old = std::fabs(hi - lo);
  double dx = dx_old;
  auto [fx, dfx] = f(x);
  for (int it = 1; it <= max_iter; ++it) {
    if (iterations) *iterations = it;
    const bool newton_leaves = ((x - hi) * dfx - fx) * ((x - lo) * dfx - fx) >= 0.0;
    const bool newton_slow = std::fabs(2.0 * fx) > std::fabs(dx_old * dfx);
    if (newton_leaves || newton_slow) {
      dx_old = dx;
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    } else {
      dx_old = dx;
      dx = fx / dfx;
      x -= dx;
    }
    if (std::fabs(dx) <= rel_tol * std::fabs(x)) return x;
    std::tie(fx, dfx) = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
  }
  throw NumericalError(NumericalError::Kind::convergence,
                       "root iteration did not converge in " + std::to_string(max_iter) +
                           " steps");
}

}  // namespace sixth
