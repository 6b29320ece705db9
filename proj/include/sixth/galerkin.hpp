#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sixth/coefficients.hpp"
#include "sixth/eigenbasis.hpp"

namespace sixth {

/// coefficient * x^power; power even in [0, 12].
struct ForcingTerm {
  int power = 0;
  double coefficient = 0.0;
};

/// a6 u^(6) + a4 u'''' + a2 u'' + a0 u = f on [-1, 1] with
/// u' = u'' = u^(5) = 0 at both ends; f an even polynomial.
struct BvpSpec {
  double a6 = 1.0;
  double a4 = 0.0;
  double a2 = 0.0;
  double a0 = 0.0;
  std::vector<ForcingTerm> forcing;

  /// Throws InvalidArgument for a6 == 0 or an unsupported forcing power.
  void validate() const;
  double forcing_at(double x) const;
  /// Integral of f over [-1, 1].
  double forcing_integral() const;

  static BvpSpec model_I();
  static BvpSpec model_II();
};

/// (x - 1)^6 (x + 1)^6, the exact solution of both model problems.
double model_exact_solution(double x);

/// Spectral coefficients of the forcing polynomial (odd part zero).
CoefficientSet forcing_coefficients(const Basis& basis, const std::vector<ForcingTerm>& forcing);

/// Diagonal solve of u^(6) + 14400 u = f with the model I forcing.
CoefficientSet solve_model_I(const Basis& basis);

enum class SolverPath { diagonal, ldlt, pivoted_lu };

std::string_view to_string(SolverPath p);

struct SteadySolution {
  CoefficientSet coefficients;
  SolverPath path = SolverPath::diagonal;
  /// LDL^T pivots when path == ldlt, otherwise empty.
  Eigen::VectorXd pivots;
  std::vector<std::string> warnings;
};

/// Even-block Galerkin matrix, row = test mode l, column = unknown u_n:
/// a6 (-lambda_n^6) delta + a4 gamma_nl + a2 beta_nl + a0 delta.
Eigen::MatrixXd steady_system_matrix(const BvpSpec& spec, const Basis& basis);

SteadySolution solve_steady(const BvpSpec& spec, const Basis& basis);

/// du/dt = A u + f for the coefficients of
///   u_t = B u'' - T u'''' + u^(6) + reaction * u + f(x).
/// The even block acts on (u0c, u1c..uMc), the odd block on (u1s..uMs).
/// reaction defaults to zero, which gives the plain thin-film operator.
struct SemiDiscreteSystem {
  int M = 0;
  double B = 0.0;
  double T = 0.0;
  double reaction = 0.0;
  Eigen::MatrixXd even_block;  // (M+1) x (M+1)
  Eigen::MatrixXd odd_block;   // M x M
  Eigen::VectorXd even_forcing;
  Eigen::VectorXd odd_forcing;
};

SemiDiscreteSystem assemble_semi_discrete(const Basis& basis, double B, double T,
                                          const CoefficientSet& forcing, double reaction = 0.0);

/// Steady problem whose solution is the long-time limit of the system driven
/// by the given forcing polynomial.
BvpSpec steady_equivalent(double B, double T, double reaction,
                          const std::vector<ForcingTerm>& forcing);

/// Theta scheme (I - theta dt A) u^{k+1} = (I + (1-theta) dt A) u^k + dt f.
/// Returns the initial state followed by every record_every-th step (the
/// final step is always included). Throws NumericalError (instability) on a
/// non-finite state, or when a dissipative system's norm grows past what the
/// exact flow allows.
std::vector<CoefficientSet> evolve(const SemiDiscreteSystem& system, const CoefficientSet& initial,
                                   double dt, int steps, double theta, int record_every = 1);

}  // namespace sixth
