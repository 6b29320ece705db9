#include "sixth/coefficients.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sixth/errors.hpp"
#include "sixth/quadrature.hpp"

namespace sixth {

namespace {

constexpr double sqrt3 = std::numbers::sqrt3;

// Trig values and scaled hyperbolics of one eigenvalue.
struct Terms {
  double l, sn, cs, s2, c2;
  ExpScaled ch, sh, ch2, c;

  Terms(double lambda, const ExpScaled& norm_c)
      : l(lambda),
        sn(std::sin(lambda)),
        cs(std::cos(lambda)),
        s2(std::sin(2 * lambda)),
        c2(std::cos(2 * lambda)),
        ch(ExpScaled::cosh(sqrt3 * lambda)),
        sh(ExpScaled::sinh(sqrt3 * lambda)),
        ch2(ExpScaled::cosh(2 * sqrt3 * lambda)),
        c(norm_c) {}

  Terms(const Mode& m) : Terms(m.lambda, m.norm_c) {}
};

double finish(const ExpScaled& v, const char* what) { return require_finite(v.value(), what); }

void check_index(const Basis& basis, Parity parity, int n, int lo, const char* what) {
  if (n < lo || n > basis.M()) {
    throw InvalidArgument(std::string(what) + " index " + std::to_string(n) +
                          " invalid for parity " + std::string(to_string(parity)) +
                          " and basis order " + std::to_string(basis.M()));
  }
}

double beta_even(const Terms& a, const Terms& b, bool same, FormulaVariant variant) {
  if (!same) {
    const Terms& n = a;
    const Terms& m = b;
    const double l3 = std::pow(m.l, 3) * std::pow(n.l, 3);
    const double den = std::pow(m.l, 6) - std::pow(n.l, 6);
    const ExpScaled rm = (m.c2 - sqrt3 * m.sn * m.sh - m.cs * m.ch) / (m.cs - m.ch);
    const ExpScaled rn = (-n.c2 + sqrt3 * n.sn * n.sh + n.cs * n.ch) / (n.cs - n.ch);
    return finish(6.0 * n.c * m.c * (l3 / den) * (m.l * n.sn * rm + n.l * m.sn * rn), "beta^c");
  }
  const Terms& t = a;
  const double den = variant == FormulaVariant::printed ? 8.0 : 2.0;
  const ExpScaled dc = t.cs - t.ch;
  const ExpScaled bracket =
      t.l * (3 * t.c2 + t.sh * t.sh + t.ch * t.ch + 4 * sqrt3 * std::pow(t.sn, 3) * t.sh -
             4 * std::pow(t.cs, 3) * t.ch) +
      2 * t.sn * dc * (sqrt3 * t.sn * t.sh + t.cs * t.ch - t.c2);
  return finish(-t.l * t.c * t.c / (den * dc * dc) * bracket, "beta^c_nn");
}

double beta_odd(const Terms& a, const Terms& b, const Terms& n_even, bool same,
                FormulaVariant variant) {
  if (!same) {
    const Terms& n = a;
    const Terms& m = b;
    const double l3 = std::pow(m.l, 3) * std::pow(n.l, 3);
    const double den = std::pow(m.l, 6) - std::pow(n.l, 6);
    const ExpScaled first =
        -m.l * n.cs * (m.s2 - sqrt3 * m.cs * m.sh + m.sn * m.ch) / (m.cs + m.ch);
    ExpScaled second;
    if (variant == FormulaVariant::printed) {
      // As published: lambda_n^c leaks into the last factor.
      second = n.l * m.cs * (n.s2 - sqrt3 * n.cs * n.sh + n.cs * n_even.ch) /
               (n_even.cs - n_even.ch);
    } else {
      second = n.l * m.cs * (n.s2 - sqrt3 * n.cs * n.sh + n.sn * n.ch) / (n.cs + n.ch);
    }
    return finish(6.0 * n.c * m.c * (l3 / den) * (first + second), "beta^s");
  }
  const Terms& t = a;
  const ExpScaled dc = t.cs + t.ch;
  const ExpScaled first = t.l * (-t.c2 + t.sh * t.sh + t.ch * t.ch -
                                 4 * sqrt3 * t.cs * t.cs * t.sn * t.sh +
                                 4 * t.sn * t.sn * t.cs * t.ch);
  if (variant == FormulaVariant::printed) {
    const ExpScaled bracket =
        first + 2 * t.cs * dc * (sqrt3 * t.cs * t.sh - t.sn * t.ch - t.s2);
    return finish(t.l * t.c * t.c / (2.0 * dc * dc) * bracket, "beta^s_nn");
  }
  const ExpScaled bracket = first + 2 * t.cs * dc * (-sqrt3 * t.cs * t.sh + t.sn * t.ch + t.s2);
  return finish(-t.l * t.c * t.c / (2.0 * dc * dc) * bracket, "beta^s_nn");
}

double gamma_even(const Terms& n, const Terms& m, bool same) {
  if (!same) {
    const double pref = std::pow(n.l, 6) / (std::pow(m.l, 6) - std::pow(n.l, 6));
    const ExpScaled term_m =
        -std::pow(m.l, 3) * m.sn * (-3 + n.c2 + 2 * n.cs * n.ch) / (n.cs - n.ch);
    const ExpScaled term_n =
        std::pow(n.l, 3) * n.sn * (-3 + m.c2 + 2 * m.cs * m.ch) / (m.cs - m.ch);
    return finish(3.0 * n.c * m.c * pref * (term_m + term_n), "gamma^c");
  }
  const Terms& t = n;
  const ExpScaled dc = t.cs - t.ch;
  const ExpScaled bracket =
      6 * t.s2 * (t.ch2 + 4) - 3 * std::sin(4 * t.l) - 48 * t.sn * t.ch +
      4 * t.l *
          (-4 * sqrt3 * std::pow(t.sn, 3) * t.sh - 4 * std::pow(t.cs, 3) * t.ch + 3 * t.c2 + t.ch2);
  return finish(std::pow(t.l, 3) * t.c * t.c / (8.0 * dc * dc) * bracket, "gamma^c_nn");
}

double gamma_odd(const Terms& n, const Terms& m, bool same) {
  if (!same) {
    const double pref = std::pow(n.l, 6) / (std::pow(n.l, 6) - std::pow(m.l, 6));
    const ExpScaled term_m =
        std::pow(m.l, 3) * m.cs * n.sn * (n.ch - n.cs) / (n.cs + n.ch);
    const ExpScaled term_n =
        std::pow(n.l, 3) * m.sn * n.cs * (m.cs - m.ch) / (m.cs + m.ch);
    return finish(6.0 * n.c * m.c * pref * (term_m + term_n), "gamma^s");
  }
  const Terms& t = n;
  const ExpScaled dc = t.cs + t.ch;
  const ExpScaled bracket =
      6 * t.s2 * (t.c2 - t.ch2) +
      4 * t.l *
          (-t.c2 + t.ch * t.ch + t.sh * t.sh + 2 * t.s2 * (t.sn * t.ch + sqrt3 * t.cs * t.sh));
  return finish(std::pow(t.l, 3) * t.c * t.c / (8.0 * dc * dc) * bracket, "gamma^s_nn");
}

double chi_closed_form(const Terms& t, int p, FormulaVariant variant) {
  const double l = t.l, sn = t.sn, cs = t.cs;
  const ExpScaled ch = t.ch, sh = t.sh;
  const ExpScaled dc = cs - ch;
  const double l2 = l * l, l3 = l2 * l, l4 = l2 * l2, l6 = l4 * l2, l8 = l6 * l2, l10 = l8 * l2;
  ExpScaled v;
  switch (p) {
    case 2:
      v = -4.0 * t.c / (l3 * dc) *
          (-l * t.c2 + sqrt3 * l * sn * sh + 3 * sn * cs + (l * cs - 3 * sn) * ch);
      break;
    case 4:
      v = 8.0 * t.c / (l4 * dc) *
          ((l2 - 6) * (t.c2 - cs * ch) - (sqrt3 * (l2 + 6) * sh + 9 * l * (cs - ch)) * sn);
      break;
    case 6:
      v = 6.0 * t.c / (l6 * dc) *
          (360 + 2 * (l4 - 20 * l2 - 60) * t.c2 - 15 * l3 * t.s2 +
           (30 * l3 * sn - 2 * (l4 - 20 * l2 + 120) * cs) * ch -
           2 * sqrt3 * l2 * (l2 + 20) * sn * sh);
      break;
    case 8:
      v = 8.0 * t.c / (l8 * l * dc) *
          (2520 * l3 - 21 * (l6 - 720) * t.s2 +
           2 * (l6 - 42 * l4 - 420 * l2 - 5040) * l * t.c2 -
           2 * sqrt3 * l * (l6 + 42 * l4 - 5040) * sn * sh +
           2 * (21 * (l6 - 720) * sn - l * (l6 - 42 * l4 + 840 * l2 - 5040) * cs) * ch);
      break;
    case 10:
      v = 20.0 * t.c / (l10 * dc) *
          (4536 * l4 - 13.5 * (l6 - 20160) * l * t.s2 +
           (l8 - 72 * l6 - 1512 * l4 - 60480 * l2 + 362880) * t.c2 -
           sqrt3 * (l8 + 72 * l6 - 60480 * l2 - 362880) * sn * sh +
           ch * (27 * l * (l6 - 20160) * sn -
                 (l8 - 72 * l6 + 3024 * l4 - 60480 * l2 + 362880) * cs));
      break;
    case 12: {
      // Published with l^10 in the prefactor; l^12 is what the integral gives.
      const double lead = variant == FormulaVariant::printed ? l10 : l10 * l2;
      v = 12.0 * t.c / (lead * dc) *
          (23760 * (l6 - 5040) - 33 * l3 * (l6 - 151200) * t.s2 +
           2 * (l10 - 110 * l8 - 3960 * l6 - 332640 * l4 + 6652800 * l2 + 19958400) * t.c2 -
           2 * sqrt3 * l2 * (l8 + 110 * l6 - 332640 * l2 - 6652800) * sn * sh +
           2 * ch *
               (33 * l3 * (l6 - 151200) * sn -
                (l10 - 110 * l8 + 7920 * l6 - 332640 * l4 + 6652800 * l2 - 39916800) * cs));
      break;
    }
    default:
      throw InvalidArgument("chi needs an even power in [2, 12], got " + std::to_string(p));
  }
  return finish(v, "chi");
}

}  // namespace

std::string_view to_string(FormulaVariant v) {
  return v == FormulaVariant::corrected ? "corrected" : "printed";
}

std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::second_derivative: return "beta";
    case OperatorKind::fourth_derivative: return "gamma";
    default: return "sixth";
  }
}

bool has_misprint(std::string_view kind, Parity parity, int n_or_p, int m) {
  if (kind == "beta") return parity == Parity::odd || n_or_p == m;
  if (kind == "chi") return n_or_p == 12;
  return false;
}

double beta(const Basis& basis, Parity parity, int n, int m, FormulaVariant variant) {
  check_index(basis, parity, n, 1, "beta row");
  check_index(basis, parity, m, 1, "beta column");
  const Terms tn(basis.mode(parity, n)), tm(basis.mode(parity, m));
  if (parity == Parity::even) return beta_even(tn, tm, n == m, variant);
  const Terms tn_even(basis.mode(Parity::even, n));
  return beta_odd(tn, tm, tn_even, n == m, variant);
}

double gamma(const Basis& basis, Parity parity, int n, int m, FormulaVariant) {
  check_index(basis, parity, n, 1, "gamma row");
  if (m == 0) {
    if (parity == Parity::odd) {
      throw InvalidArgument("gamma_n0 is identically zero for odd parity");
    }
    const Terms t(basis.mode(parity, n));
    return finish(6.0 * t.c * std::pow(t.l, 3) * t.sn, "gamma_n0");
  }
  check_index(basis, parity, m, 1, "gamma column");
  const Terms tn(basis.mode(parity, n)), tm(basis.mode(parity, m));
  return parity == Parity::even ? gamma_even(tn, tm, n == m) : gamma_odd(tn, tm, n == m);
}

double chi(const Basis& basis, int p, int m, FormulaVariant variant) {
  if (p < 2 || p > 12 || p % 2 != 0) {
    throw InvalidArgument("chi needs an even power in [2, 12], got " + std::to_string(p));
  }
  check_index(basis, Parity::even, m, 1, "chi");
  return chi_closed_form(Terms(basis.mode(Parity::even, m)), p, variant);
}

double even_power_coefficient(const Basis& basis, int p, int m) {
  if (p < 0 || p > 12 || p % 2 != 0) {
    throw InvalidArgument("forcing power must be even and in [0, 12], got " + std::to_string(p));
  }
  if (m == 0) return 2.0 / (p + 1);
  if (p == 0) return 0.0;
  return chi(basis, p, m);
}

OperatorMatrix operator_matrix(const Basis& basis, Parity parity, OperatorKind kind) {
  const int M = basis.M();
  OperatorMatrix op;
  op.parity = parity;
  op.kind = kind;
  op.entries = Eigen::MatrixXd::Zero(M, M);
  if (kind == OperatorKind::sixth_derivative) {
    for (int n = 1; n <= M; ++n) op.entries(n - 1, n - 1) = -std::pow(basis.lambda(parity, n), 6);
    return op;
  }
  for (int n = 1; n <= M; ++n) {
    for (int m = 1; m <= M; ++m) {
      op.entries(n - 1, m - 1) = kind == OperatorKind::second_derivative
                                     ? beta(basis, parity, n, m)
                                     : gamma(basis, parity, n, m);
    }
  }
  if (kind == OperatorKind::fourth_derivative && parity == Parity::even) {
    op.row0.resize(M);
    for (int n = 1; n <= M; ++n) op.row0[n - 1] = gamma(basis, parity, n, 0);
  }
  return op;
}

CoefficientSet CoefficientSet::zeros(int M) {
  CoefficientSet c;
  c.M = M;
  c.uc = Eigen::VectorXd::Zero(M);
  c.us = Eigen::VectorXd::Zero(M);
  return c;
}

CoefficientSet project(const RealFunction& f, const Basis& basis, double tol) {
  const int M = basis.M();
  auto coeffs = CoefficientSet::zeros(M);
  auto against = [&](Parity parity, int m) {
    const Mode& mode = basis.mode(parity, m);
    auto integrand = [&](long double x) -> long double {
      const double xd = static_cast<double>(x);
      return static_cast<long double>(f(xd)) * mode.eval(xd, 0);
    };
    return static_cast<double>(oracle::adaptive_integrate(integrand, tol, mode.lambda).value);
  };
  coeffs.u0c = against(Parity::even, 0);
  for (int m = 1; m <= M; ++m) {
    coeffs.uc[m - 1] = against(Parity::even, m);
    coeffs.us[m - 1] = against(Parity::odd, m);
  }
  return coeffs;
}

double synthesize(const Basis& basis, const CoefficientSet& coeffs, double x, int k) {
  if (!(std::fabs(x) <= 1.0)) {
    throw InvalidArgument("x = " + std::to_string(x) + " outside [-1, 1]");
  }
  if (k < 0 || k > 6) throw InvalidArgument("derivative order must be 0..6");
  if (coeffs.M > basis.M()) {
    throw InvalidArgument("coefficient set of order " + std::to_string(coeffs.M) +
                          " exceeds basis order " + std::to_string(basis.M()));
  }
  double sum = k == 0 ? 0.5 * coeffs.u0c : 0.0;
  for (int n = 1; n <= coeffs.M; ++n) {
    if (coeffs.uc[n - 1] != 0.0) sum += coeffs.uc[n - 1] * basis.mode(Parity::even, n).eval(x, k);
    if (coeffs.us[n - 1] != 0.0) sum += coeffs.us[n - 1] * basis.mode(Parity::odd, n).eval(x, k);
  }
  return sum;
}

}  // namespace sixth
