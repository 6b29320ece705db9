#include "sixth/galerkin.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "sixth/errors.hpp"
#include "sixth/linalg.hpp"

namespace sixth {

namespace {

constexpr double resonance_tol = 1e-6;
constexpr double symmetry_tol = 1e-9;

void check_resonance(double denominator, double scale, int m) {
  if (std::fabs(denominator) < resonance_tol * scale) {
    throw NumericalError(NumericalError::Kind::resonance,
                         "diagonal denominator " + std::to_string(denominator) + " at mode " +
                             std::to_string(m) + " is resonant");
  }
}

Eigen::VectorXd forcing_vector(const Basis& basis, const std::vector<ForcingTerm>& forcing) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(basis.M());
  for (int m = 1; m <= basis.M(); ++m) {
    for (const auto& term : forcing) {
      if (term.coefficient != 0.0) {
        f[m - 1] += term.coefficient * even_power_coefficient(basis, term.power, m);
      }
    }
  }
  return f;
}

void require_finite(const Eigen::VectorXd& v, const char* where) {
  for (double x : v) sixth::require_finite(x, where);
}

}  // namespace

void BvpSpec::validate() const {
  if (a6 == 0.0) throw InvalidArgument("a6 must be nonzero for a sixth-order problem");
  for (double a : {a6, a4, a2, a0}) {
    if (!std::isfinite(a)) throw InvalidArgument("operator coefficients must be finite");
  }
  for (const auto& t : forcing) {
    if (t.power < 0 || t.power > 12 || t.power % 2 != 0) {
      throw InvalidArgument("forcing power " + std::to_string(t.power) +
                            " unsupported (even powers 0..12 only)");
    }
    if (!std::isfinite(t.coefficient)) throw InvalidArgument("forcing coefficient not finite");
  }
}

double BvpSpec::forcing_at(double x) const {
  double sum = 0.0;
  for (const auto& t : forcing) sum += t.coefficient * std::pow(x, t.power);
  return sum;
}

double BvpSpec::forcing_integral() const {
  double sum = 0.0;
  for (const auto& t : forcing) sum += t.coefficient * 2.0 / (t.power + 1);
  return sum;
}

BvpSpec BvpSpec::model_I() {
  BvpSpec s;
  s.a6 = 1.0;
  s.a0 = 14400.0;
  s.forcing = {{2, 216000.0}, {4, -691200.0}, {6, 377280.0},
               {8, 216000.0}, {10, -86400.0}, {12, 14400.0}};
  return s;
}

BvpSpec BvpSpec::model_II() {
  BvpSpec s;
  s.a6 = 1.0;
  s.a2 = -5544.0;
  s.a0 = -199584.0;
  s.forcing = {{12, -199584.0}, {10, 465696.0}, {4, -574560.0}, {2, 501984.0}, {0, -147456.0}};
  return s;
}

double model_exact_solution(double x) { return std::pow(x - 1.0, 6) * std::pow(x + 1.0, 6); }

std::string_view to_string(SolverPath p) {
  switch (p) {
    case SolverPath::diagonal: return "diagonal";
    case SolverPath::ldlt: return "ldlt";
    default: return "pivoted_lu";
  }
}

CoefficientSet forcing_coefficients(const Basis& basis, const std::vector<ForcingTerm>& forcing) {
  auto c = CoefficientSet::zeros(basis.M());
  for (const auto& t : forcing) c.u0c += t.coefficient * even_power_coefficient(basis, t.power, 0);
  c.uc = forcing_vector(basis, forcing);
  return c;
}

CoefficientSet solve_model_I(const Basis& basis) {
  const BvpSpec spec = BvpSpec::model_I();
  const int M = basis.M();
  auto u = CoefficientSet::zeros(M);
  u.u0c = spec.forcing_integral() / spec.a0;
  const Eigen::VectorXd f = forcing_vector(basis, spec.forcing);
  for (int m = 1; m <= M; ++m) {
    const double l6 = std::pow(basis.lambda(Parity::even, m), 6);
    const double den = spec.a0 - l6;
    check_resonance(den, l6, m);
    u.uc[m - 1] = f[m - 1] / den;
  }
  require_finite(u.uc, "model I coefficients");
  return u;
}

Eigen::MatrixXd steady_system_matrix(const BvpSpec& spec, const Basis& basis) {
  spec.validate();
  const int M = basis.M();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
  for (int n = 1; n <= M; ++n) {
    A(n - 1, n - 1) = -spec.a6 * std::pow(basis.lambda(Parity::even, n), 6) + spec.a0;
  }
  // entries(n, l) = <psi_n^(k), psi_l>; the equation for test mode l is row l.
  if (spec.a4 != 0.0) {
    A += spec.a4 * operator_matrix(basis, Parity::even, OperatorKind::fourth_derivative)
                       .entries.transpose();
  }
  if (spec.a2 != 0.0) {
    A += spec.a2 * operator_matrix(basis, Parity::even, OperatorKind::second_derivative)
                       .entries.transpose();
  }
  return A;
}

SteadySolution solve_steady(const BvpSpec& spec, const Basis& basis) {
  spec.validate();
  const int M = basis.M();
  SteadySolution out;
  out.coefficients = CoefficientSet::zeros(M);
  auto& u = out.coefficients;

  const Eigen::VectorXd f = forcing_vector(basis, spec.forcing);
  const Eigen::MatrixXd A = steady_system_matrix(spec, basis);

  if (spec.a4 == 0.0 && spec.a2 == 0.0) {
    out.path = SolverPath::diagonal;
    for (int m = 1; m <= M; ++m) {
      const double l6 = std::fabs(spec.a6) * std::pow(basis.lambda(Parity::even, m), 6);
      check_resonance(A(m - 1, m - 1), std::fmax(l6, std::fabs(spec.a0)), m);
      u.uc[m - 1] = f[m - 1] / A(m - 1, m - 1);
    }
  } else if (symmetry_defect(A) < symmetry_tol) {
    try {
      const LdltFactor ldlt = ldlt_unpivoted(A);
      out.path = SolverPath::ldlt;
      out.pivots = ldlt.D;
      u.uc = ldlt.solve(f);
    } catch (const NumericalError& e) {
      if (e.kind() != NumericalError::Kind::definiteness) throw;
      out.warnings.push_back(std::string("LDL^T rejected (") + e.what() +
                             "); using pivoted LU");
      out.path = SolverPath::pivoted_lu;
      u.uc = A.partialPivLu().solve(f);
    }
  } else {
    out.warnings.push_back("system matrix is not symmetric; using pivoted LU");
    out.path = SolverPath::pivoted_lu;
    u.uc = A.partialPivLu().solve(f);
  }
  require_finite(u.uc, "steady solution");

  // Row 0: integrate the equation over [-1, 1]. The sixth and second
  // derivatives integrate to zero under the boundary conditions.
  const double f0 = spec.forcing_integral();
  double fourth = 0.0;
  if (spec.a4 != 0.0) {
    for (int n = 1; n <= M; ++n) fourth += gamma(basis, Parity::even, n, 0) * u.uc[n - 1];
  }
  const double balance = f0 - spec.a4 * fourth;
  if (spec.a0 != 0.0) {
    u.u0c = balance / spec.a0;
  } else {
    double scale = 0.0;
    for (const auto& t : spec.forcing) scale += std::fabs(t.coefficient) * 2.0 / (t.power + 1);
    scale += std::fabs(spec.a4 * fourth);
    if (std::fabs(balance) > 1e-8 * std::fmax(scale, 1.0)) {
      throw NumericalError(NumericalError::Kind::inconsistent,
                           "a0 = 0 requires the integrated equation to balance; residual " +
                               std::to_string(balance));
    }
    u.u0c = 0.0;
    out.warnings.push_back("a0 = 0: mean of u is undetermined, u0c set to 0");
  }
  sixth::require_finite(u.u0c, "steady u0c");
  return out;
}

SemiDiscreteSystem assemble_semi_discrete(const Basis& basis, double B, double T,
                                          const CoefficientSet& forcing, double reaction) {
  const int M = basis.M();
  if (forcing.M != M) throw InvalidArgument("forcing order does not match basis order");
  SemiDiscreteSystem sys;
  sys.M = M;
  sys.B = B;
  sys.T = T;
  sys.reaction = reaction;
  sys.even_block = Eigen::MatrixXd::Zero(M + 1, M + 1);
  sys.odd_block = Eigen::MatrixXd::Zero(M, M);

  for (Parity parity : {Parity::even, Parity::odd}) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(M, M);
    for (int n = 1; n <= M; ++n) block(n - 1, n - 1) = -std::pow(basis.lambda(parity, n), 6) + reaction;
    if (T != 0.0) {
      block -= T * operator_matrix(basis, parity, OperatorKind::fourth_derivative).entries.transpose();
    }
    if (B != 0.0) {
      block += B * operator_matrix(basis, parity, OperatorKind::second_derivative).entries.transpose();
    }
    if (parity == Parity::even) {
      sys.even_block.bottomRightCorner(M, M) = block;
    } else {
      sys.odd_block = block;
    }
  }
  sys.even_block(0, 0) = reaction;
  if (T != 0.0) {
    for (int n = 1; n <= M; ++n) sys.even_block(0, n) = -T * gamma(basis, Parity::even, n, 0);
  }

  sys.even_forcing.resize(M + 1);
  sys.even_forcing[0] = forcing.u0c;
  sys.even_forcing.tail(M) = forcing.uc;
  sys.odd_forcing = forcing.us;
  return sys;
}

BvpSpec steady_equivalent(double B, double T, double reaction,
                          const std::vector<ForcingTerm>& forcing) {
  // 0 = B u'' - T u'''' + u^(6) + reaction u + f
  BvpSpec s;
  s.a6 = 1.0;
  s.a4 = -T;
  s.a2 = B;
  s.a0 = reaction;
  for (const auto& t : forcing) s.forcing.push_back({t.power, -t.coefficient});
  return s;
}

std::vector<CoefficientSet> evolve(const SemiDiscreteSystem& system, const CoefficientSet& initial,
                                   double dt, int steps, double theta, int record_every) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (steps < 0) throw InvalidArgument("steps must be non-negative");
  if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in [0, 1]");
  if (record_every < 1) throw InvalidArgument("record_every must be >= 1");
  if (initial.M != system.M) throw InvalidArgument("initial state order does not match system");
  const int M = system.M;

  struct Stepper {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::MatrixXd explicit_part;
    Eigen::VectorXd forcing;
  };
  auto make = [&](const Eigen::MatrixXd& A, const Eigen::VectorXd& f) {
    const auto n = A.rows();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    Stepper s{Eigen::PartialPivLU<Eigen::MatrixXd>(I - theta * dt * A),
              I + (1.0 - theta) * dt * A, dt * f};
    if (n > 0 && !(s.lu.rcond() > 1e-300)) {
      throw NumericalError(NumericalError::Kind::definiteness, "singular theta-step matrix");
    }
    return s;
  };
  const Stepper even = make(system.even_block, system.even_forcing);
  const Stepper odd = make(system.odd_block, system.odd_forcing);

  // When the symmetric part of a block is negative semidefinite the exact
  // flow obeys |u(t)| <= |u(0)| + t |f|. Anything well past that is the
  // scheme blowing up.
  auto dissipative = [](const Eigen::MatrixXd& A) {
    if (A.rows() == 0) return false;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(-0.5 * (A + A.transpose()));
    return ldlt.info() == Eigen::Success && ldlt.isPositive();
  };
  const bool even_dissipative = dissipative(system.even_block);
  const bool odd_dissipative = dissipative(system.odd_block);

  Eigen::VectorXd ue(M + 1);
  ue[0] = initial.u0c;
  ue.tail(M) = initial.uc;
  Eigen::VectorXd uo = initial.us;
  const double even_start = ue.norm(), odd_start = uo.norm();
  const double even_push = system.even_forcing.norm(), odd_push = system.odd_forcing.norm();

  std::vector<CoefficientSet> out;
  out.push_back(initial);
  for (int k = 1; k <= steps; ++k) {
    ue = even.lu.solve(even.explicit_part * ue + even.forcing);
    uo = odd.lu.solve(odd.explicit_part * uo + odd.forcing);
    if (!ue.allFinite() || !uo.allFinite()) {
      throw NumericalError(NumericalError::Kind::instability,
                           "non-finite state at step " + std::to_string(k));
    }
    const double t = k * dt;
    if ((even_dissipative && ue.norm() > 10.0 * (even_start + t * even_push) + 1e-300) ||
        (odd_dissipative && uo.norm() > 10.0 * (odd_start + t * odd_push) + 1e-300)) {
      throw NumericalError(NumericalError::Kind::instability,
                           "norm growth in a dissipative system at step " + std::to_string(k) +
                               "; reduce dt or raise theta");
    }
    if (k % record_every == 0 || k == steps) {
      CoefficientSet c;
      c.M = M;
      c.u0c = ue[0];
      c.uc = ue.tail(M);
      c.us = uo;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace sixth
