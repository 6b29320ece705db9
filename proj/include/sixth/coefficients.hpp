#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sixth/eigenbasis.hpp"

namespace sixth {

/// Which algebraic form of a Galerkin coefficient to evaluate.
///
/// `printed` reproduces the published closed forms symbol for symbol,
/// including the misprints in the even/odd beta diagonals, the odd beta
/// off-diagonal and the x^12 prefactor. `corrected` is the form that agrees
/// with quadrature and is what every solver uses.
enum class FormulaVariant { corrected, printed };

std::string_view to_string(FormulaVariant v);

/// True when the printed closed form of that coefficient differs from the
/// corrected one. For chi the first index is the power p, the second the mode.
bool has_misprint(std::string_view kind, Parity parity, int n_or_p, int m);

/// <psi_n'', psi_m>, n, m >= 1 (beta_n0 is identically zero).
double beta(const Basis& basis, Parity parity, int n, int m,
            FormulaVariant variant = FormulaVariant::corrected);

/// <psi_n'''', psi_m>, n >= 1, m >= 0; m = 0 only for even parity, where it
/// is 6 c_n lambda_n^3 sin(lambda_n).
double gamma(const Basis& basis, Parity parity, int n, int m,
             FormulaVariant variant = FormulaVariant::corrected);

/// <x^p, psi_m^c> for p in {2, 4, ..., 12} and m >= 1.
double chi(const Basis& basis, int p, int m,
           FormulaVariant variant = FormulaVariant::corrected);

/// <x^p, psi_m^c> for any even p in [0, 12] and m >= 0 (m = 0 gives the
/// plain integral 2/(p+1); p = 0, m >= 1 gives 0 by orthogonality).
double even_power_coefficient(const Basis& basis, int p, int m);

enum class OperatorKind { second_derivative, fourth_derivative, sixth_derivative };

std::string_view to_string(OperatorKind k);

/// Dense Galerkin projection of a derivative operator on one parity block.
///
/// entries(n-1, m-1) holds <psi_n^{(k)}, psi_m>, i.e. row = differentiated
/// mode, column = test mode. For the even fourth derivative, row0 holds
/// gamma_n0 (n = 1..M); it is empty otherwise.
struct OperatorMatrix {
  Parity parity = Parity::even;
  OperatorKind kind = OperatorKind::second_derivative;
  Eigen::MatrixXd entries;
  Eigen::VectorXd row0;

  int size() const { return static_cast<int>(entries.rows()); }
};

OperatorMatrix operator_matrix(const Basis& basis, Parity parity, OperatorKind kind);

/// Spectral coefficients of u = u0c/2 + sum uc_n psi_n^c + sum us_n psi_n^s.
struct CoefficientSet {
  int M = 0;
  double u0c = 0.0;
  Eigen::VectorXd uc;  // uc[n-1] = u_n^c
  Eigen::VectorXd us;  // us[n-1] = u_n^s

  static CoefficientSet zeros(int M);
};

using RealFunction = std::function<double(double)>;

/// Projects f onto the basis with adaptive quadrature (tolerance 1e-12).
CoefficientSet project(const RealFunction& f, const Basis& basis, double tol = 1e-12);

/// k-th derivative of the expansion at x in [-1, 1].
double synthesize(const Basis& basis, const CoefficientSet& coeffs, double x, int k = 0);

}  // namespace sixth
