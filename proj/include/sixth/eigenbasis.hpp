#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "sixth/scaled.hpp"

namespace sixth {

/// Symmetry class of an eigenfunction: even (cosine-like, index from 0) or
/// odd (sine-like, index from 1).
enum class Parity { even, odd };

std::string_view to_string(Parity p);
Parity parse_parity(std::string_view text);

/// A root of the even/odd eigenvalue relation.
struct Eigenvalue {
  Parity parity = Parity::even;
  int index = 0;
  double lambda = 0.0;
  /// Residual of the relation divided by cosh(sqrt(3) lambda).
  double residual = 0.0;
  /// Newton/bisection iterations used; 0 for the closed-form lambda = 0.
  int iterations = 0;
};

/// Large-lambda approximation: (m + 1/6)pi for even, (m - 1/3)pi for odd.
double eigenvalue_asymptotic(Parity parity, int m);

/// Even relation cos 2l + sqrt3 sin l sinh(sqrt3 l) - cos l cosh(sqrt3 l) and the
/// odd relation sin 2l + sqrt3 cos l sinh(sqrt3 l) + sin l cosh(sqrt3 l), both
/// divided by cosh(sqrt3 l) so they stay O(1). Returns {value, derivative}.
std::pair<double, double> eigen_relation(Parity parity, double lambda);

Eigenvalue solve_eigenvalue(Parity parity, int m);

/// Safeguarded Newton iteration on [lo, hi]. f must change sign on the
/// bracket. Throws NumericalError (bracketing / convergence).
template <class F>
double bracketed_newton(F&& f, double lo, double hi, double x0, double rel_tol,
                        int max_iter, int* iterations = nullptr);

/// Evaluation data for one normalized eigenfunction.
///
/// With s = sqrt3*lambda and omega = lambda*e^{i pi/6} = s/2 + i lambda/2:
///   even:  psi(x) = trig_amp cos(lambda x) + Re[hyp_amp e^{-s/2} cosh(omega x)]
///   odd:   psi(x) = trig_amp sin(lambda x) + Re[hyp_amp e^{-s/2} sinh(omega x)]
/// hyp_amp is O(1) for every lambda; the e^{-s/2} is merged into the
/// exponentials at evaluation time so nothing overflows.
struct Mode {
  Parity parity = Parity::even;
  int index = 0;
  double lambda = 0.0;
  double trig_amp = 0.0;
  std::complex<double> hyp_amp;
  /// c_m of the closed forms (cosine/sine amplitude) and d_m, kept scaled.
  ExpScaled norm_c;
  ExpScaled norm_d;

  /// k-th derivative (0..6) at x in [-1, 1]; no argument checks.
  double eval(double x, int k) const;
};

/// Truncated eigenfunction basis: even modes 0..M, odd modes 1..M.
/// Immutable once built; safe to share across threads.
class Basis {
 public:
  static constexpr int max_order = 10000;

  explicit Basis(int M);

  int M() const noexcept { return M_; }
  const Mode& mode(Parity parity, int m) const;
  double lambda(Parity parity, int m) const { return mode(parity, m).lambda; }
  const Eigenvalue& eigenvalue(Parity parity, int m) const;

  /// psi_m^{(k)}(x); throws InvalidArgument on |x| > 1, k outside 0..6 or an
  /// unknown mode.
  double eval(Parity parity, int m, double x, int k = 0) const;

 private:
  int M_;
  std::vector<Eigenvalue> even_values_, odd_values_;  // odd index 0 unused
  std::vector<Mode> even_, odd_;
};

Basis build_basis(int M);

/// Normalized mode data for an eigenvalue; exposed for tests.
Mode make_mode(const Eigenvalue& ev);

}  // namespace sixth

#include "sixth/detail/bracketed_newton.ipp"
