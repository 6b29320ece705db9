#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sixth/coefficients.hpp"
#include "sixth/eigenbasis.hpp"
#include "sixth/galerkin.hpp"
#include "sixth/quadrature.hpp"

namespace sixth::oracle {

/// Normalized eigenfunction evaluated straight from its trig/hyperbolic
/// product form in long double, with derivatives by the Leibniz rule.
///
/// Shares nothing with Mode::eval except the eigenvalue. Usable while
/// cosh(2 sqrt3 lambda) fits a long double, i.e. lambda <= 3000.
class DirectMode {
 public:
  static constexpr double max_lambda = 3000.0;

  DirectMode(Parity parity, double lambda);

  Parity parity() const { return parity_; }
  double lambda() const { return static_cast<double>(lambda_); }
  long double eval(long double x, int k = 0) const;

 private:
  Parity parity_;
  long double lambda_;
  long double norm_ = 1.0L;   // c_m
  long double hyp_ = 0.0L;    // 4 sin l/(cos l - cosh s) or 4 cos l/(cos l + cosh s)
  long double first_ = 0.0L;  // coefficient of the first trig*hyp product
  long double second_ = 0.0L;
};

/// Tabulates k-th derivatives of a mode on the nodes of a rule.
std::vector<long double> tabulate(const QuadratureRule& rule, const DirectMode& mode, int k);

enum class FormulaKind { beta, gamma, chi };

std::string to_string(FormulaKind k);

struct VerificationReport {
  FormulaKind kind = FormulaKind::beta;
  Parity parity = Parity::even;
  int n = 0;  // row index for beta/gamma; power p for chi
  int m = 0;
  FormulaVariant variant = FormulaVariant::corrected;
  /// True when the published form differs from the corrected one.
  bool documented_misprint = false;
  double closed_form = 0.0;
  double quadrature = 0.0;
  double rel_discrepancy = 0.0;
  bool pass = false;

  static constexpr double threshold = 1e-8;
};

/// Closed form vs adaptive quadrature (tol 1e-12) of the defining integral.
/// For chi, n_or_p is the power p and m the mode index.
VerificationReport verify_formula(const Basis& basis, FormulaKind kind, Parity parity, int n_or_p,
                                  int m, FormulaVariant variant = FormulaVariant::corrected);

/// All beta/gamma entries with n, m <= max_index for both parities, gamma_n0,
/// and chi for p = 2..12, m = 1..max_index. With include_printed, entries whose
/// published form is misprinted get a second report for the printed variant.
std::vector<VerificationReport> verify_sweep(const Basis& basis, int max_index,
                                             bool include_printed = true);

/// Gram matrix <psi_a, psi_b> for modes 1..count of one parity.
Eigen::MatrixXd gram_matrix(const Basis& basis, Parity parity, int count);

/// max |<psi_a^c, psi_b^s>| over a, b <= count.
double cross_parity_max(const Basis& basis, int count);

/// max |<psi_n^(6), psi_m> - <psi_n, psi_m^(6)>| / lambda_max^6 for n, m <= count.
double self_adjointness_defect(const Basis& basis, Parity parity, int count);

/// max over `points` interior points of |L u - f| using analytic derivatives.
double residual_scan(const BvpSpec& spec, const Basis& basis, const CoefficientSet& solution,
                     int points);

}  // namespace sixth::oracle
