#include "sixth/eigenbasis.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sixth/errors.hpp"

namespace sixth {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt3 = std::numbers::sqrt3;

// e^{i k pi/6}, k = 0..6, written out so that omega^6 = -lambda^6 exactly.
constexpr std::array<std::complex<double>, 7> twelfth_roots = {{
    {1.0, 0.0},
    {0.5 * sqrt3, 0.5},
    {0.5, 0.5 * sqrt3},
    {0.0, 1.0},
    {-0.5, 0.5 * sqrt3},
    {-0.5 * sqrt3, 0.5},
    {-1.0, 0.0},
}};

// cos(t + k pi/2) and sin(t + k pi/2) without rounding pi/2.
double cos_shifted(double c, double s, int k) {
  switch (k & 3) {
    case 0: return c;
    case 1: return -s;
    case 2: return -c;
    default: return s;
  }
}
double sin_shifted(double c, double s, int k) {
  switch (k & 3) {
    case 0: return s;
    case 1: return c;
    case 2: return -s;
    default: return -c;
  }
}

// Rounding floor of the scaled relation near lambda: |F'| * ulp-level error in
// the argument of the trig functions.
double residual_floor(double lambda, double derivative) {
  return 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(lambda) *
         std::fabs(derivative);
}

constexpr double residual_tol = 1e-12;

}  // namespace

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parse_parity(std::string_view text) {
  if (text == "even" || text == "c") return Parity::even;
  if (text == "odd" || text == "s") return Parity::odd;
  throw InvalidArgument("unknown parity '" + std::string(text) + "' (expected even|odd)");
}

double require_finite(double value, const char* where) {
  if (!std::isfinite(value)) {
    throw NumericalError(NumericalError::Kind::non_finite,
                         std::string("non-finite value in ") + where);
  }
  return value;
}

double eigenvalue_asymptotic(Parity parity, int m) {
  if (m < 1) {
    throw InvalidArgument("asymptotic eigenvalue needs m >= 1, got " + std::to_string(m));
  }
  return parity == Parity::even ? (m + 1.0 / 6.0) * pi : (m - 1.0 / 3.0) * pi;
}

std::pair<double, double> eigen_relation(Parity parity, double lambda) {
  const double s = sqrt3 * lambda;
  const double e2 = std::exp(-2.0 * std::fabs(s));
  const double sech = 2.0 * std::exp(-std::fabs(s)) / (1.0 + e2);
  const double tanh = std::copysign(-std::expm1(-2.0 * std::fabs(s)) / (1.0 + e2), s);
  const double sn = std::sin(lambda), cs = std::cos(lambda);
  const double s2 = std::sin(2.0 * lambda), c2 = std::cos(2.0 * lambda);
  if (parity == Parity::even) {
    const double f = c2 * sech + sqrt3 * sn * tanh - cs;
    const double df = -2.0 * s2 * sech - sqrt3 * c2 * sech * tanh + sqrt3 * cs * tanh +
                      3.0 * sn * sech * sech + sn;
    return {f, df};
  }
  const double f = s2 * sech + sqrt3 * cs * tanh + sn;
  const double df = 2.0 * c2 * sech - sqrt3 * s2 * sech * tanh - sqrt3 * sn * tanh +
                    3.0 * cs * sech * sech + cs;
  return {f, df};
}

Eigenvalue solve_eigenvalue(Parity parity, int m) {
  if (m < 0 || (parity == Parity::odd && m < 1)) {
    throw InvalidArgument("invalid mode (" + std::string(to_string(parity)) + ", " +
                          std::to_string(m) + ")");
  }
  Eigenvalue ev{parity, m, 0.0, 0.0, 0};
  if (m == 0) return ev;

  auto relation = [parity](double l) { return eigen_relation(parity, l); };
  const double guess = eigenvalue_asymptotic(parity, m);
  const double half_width = m == 1 ? 1.0 : pi / 2.0;
  const double lo = guess - half_width, hi = guess + half_width;

  bool done = false;
  if (m >= 7) {
    // The asymptotic value is already accurate to ~12 digits; polish once.
    auto [f0, df0] = relation(guess);
    const double x1 = guess - f0 / df0;
    auto [f1, df1] = relation(x1);
    if (x1 > lo && x1 < hi &&
        std::fabs(f1) < residual_tol + residual_floor(x1, df1)) {
      ev.lambda = x1;
      ev.iterations = 1;
      done = true;
    }
  }
  if (!done) {
    ev.lambda = bracketed_newton(relation, lo, hi, guess, 1e-14, 200, &ev.iterations);
  }
  auto [f, df] = relation(ev.lambda);
  ev.residual = f;
  if (!(std::fabs(f) < residual_tol + residual_floor(ev.lambda, df))) {
    throw NumericalError(NumericalError::Kind::convergence,
                         "eigenvalue residual " + std::to_string(f) + " too large for (" +
                             std::string(to_string(parity)) + ", " + std::to_string(m) + ")");
  }
  return ev;
}

Mode make_mode(const Eigenvalue& ev) {
  Mode mode;
  mode.parity = ev.parity;
  mode.index = ev.index;
  mode.lambda = ev.lambda;
  if (ev.lambda == 0.0) {
    // psi_0^c = 1, deliberately not normalized (the expansion carries 1/2).
    mode.trig_amp = 1.0;
    mode.norm_c = 1.0;
    mode.norm_d = 0.0;
    return mode;
  }

  const double l = ev.lambda;
  const double s = sqrt3 * l;
  const double sn = std::sin(l), cs = std::cos(l);
  const double s2 = std::sin(2 * l), c2 = std::cos(2 * l);
  const ExpScaled ch = ExpScaled::cosh(s), sh = ExpScaled::sinh(s), ch2 = ExpScaled::cosh(2 * s);
  const ExpScaled half_ch = ExpScaled::cosh(s / 2), half_sh = ExpScaled::sinh(s / 2);

  ExpScaled d, c, k;
  std::complex<double> amp;
  if (ev.parity == Parity::even) {
    d = std::sin(4 * l) - 6 * l * (c2 - 2) + 2 * l * ch2 + 2 * s2 * ch * ch +
        ch * (sn - 3 * std::sin(3 * l) + 4 * l * (std::cos(3 * l) - 3 * cs)) +
        4 * sqrt3 * sn * sn * sh * (cs - ch);
    c = 2.0 * sqrt(ExpScaled(l) / d) * (cs - ch);
    k = c * (4 * sn) / (cs - ch);
    const ExpScaled c1 = k * std::cos(l / 2) * half_sh;
    const ExpScaled c2v = k * std::sin(l / 2) * half_ch;
    amp = {c2v.value_scaled(-s / 2), c1.value_scaled(-s / 2)};
  } else {
    d = 12 * l - 3 * s2 - std::sin(4 * l) + 10 * l * c2 - (s2 - 2 * l) * ch2 -
        4 * sqrt3 * cs * cs * sh * (cs + ch) +
        2 * cs * ch * (4 * l * (c2 + 2) - 3 * s2);
    c = 2.0 * sqrt(ExpScaled(l) / d) * (cs + ch);
    k = c * (4 * cs) / (cs + ch);
    const ExpScaled c1 = k * std::cos(l / 2) * half_ch;
    const ExpScaled c2v = k * std::sin(l / 2) * half_sh;
    amp = {c2v.value_scaled(-s / 2), c1.value_scaled(-s / 2)};
  }
  if (!(d.mantissa() > 0.0)) {
    throw NumericalError(NumericalError::Kind::non_finite,
                         "normalization d_m is not positive at lambda=" + std::to_string(l));
  }
  mode.norm_d = d;
  mode.norm_c = c;
  mode.trig_amp = require_finite(c.value(), "normalization constant c_m");
  mode.hyp_amp = amp;
  require_finite(amp.real(), "hyperbolic amplitude");
  require_finite(amp.imag(), "hyperbolic amplitude");
  return mode;
}

double Mode::eval(double x, int k) const {
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double lk = std::pow(lambda, k);
  const double arg = lambda * x;
  const double ca = std::cos(arg), sa = std::sin(arg);
  const double trig = parity == Parity::even ? cos_shifted(ca, sa, k) : sin_shifted(ca, sa, k);

  const double s_half = 0.5 * sqrt3 * lambda;
  const double half_arg = 0.5 * arg;
  const std::complex<double> rot(std::cos(half_arg), std::sin(half_arg));
  const std::complex<double> plus = std::exp(s_half * (x - 1.0)) * rot;
  const std::complex<double> minus = std::exp(s_half * (-x - 1.0)) * std::conj(rot);
  const double sign = (k & 1) ? -1.0 : 1.0;
  const std::complex<double> h =
      parity == Parity::even ? 0.5 * (plus + sign * minus) : 0.5 * (plus - sign * minus);
  const double hyp = (hyp_amp * twelfth_roots[k] * h).real();
  return lk * (trig_amp * trig + hyp);
}

Basis::Basis(int M) : M_(M) {
  if (M < 1 || M > max_order) {
    throw InvalidArgument("basis order M must be in [1, " + std::to_string(max_order) +
                          "], got " + std::to_string(M));
  }
  even_values_.reserve(M + 1);
  odd_values_.reserve(M + 1);
  even_.reserve(M + 1);
  odd_.reserve(M + 1);
  odd_values_.push_back(Eigenvalue{Parity::odd, 0, 0.0, 0.0, 0});
  odd_.push_back(Mode{});
  for (int m = 0; m <= M; ++m) {
    even_values_.push_back(solve_eigenvalue(Parity::even, m));
    even_.push_back(make_mode(even_values_.back()));
    if (m >= 1) {
      odd_values_.push_back(solve_eigenvalue(Parity::odd, m));
      odd_.push_back(make_mode(odd_values_.back()));
    }
  }
}

const Mode& Basis::mode(Parity parity, int m) const {
  const int lo = parity == Parity::even ? 0 : 1;
  if (m < lo || m > M_) {
    throw InvalidArgument("mode (" + std::string(to_string(parity)) + ", " + std::to_string(m) +
                          ") not in basis of order " + std::to_string(M_));
  }
  return parity == Parity::even ? even_[m] : odd_[m];
}

const Eigenvalue& Basis::eigenvalue(Parity parity, int m) const {
  mode(parity, m);
  return parity == Parity::even ? even_values_[m] : odd_values_[m];
}

double Basis::eval(Parity parity, int m, double x, int k) const {
  if (!(std::fabs(x) <= 1.0)) {
    throw InvalidArgument("x = " + std::to_string(x) + " outside [-1, 1]");
  }
  if (k < 0 || k > 6) {
    throw InvalidArgument("derivative order must be 0..6, got " + std::to_string(k));
  }
  return mode(parity, m).eval(x, k);
}

Basis build_basis(int M) { return Basis(M); }

}  // namespace sixth
