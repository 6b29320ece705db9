#include "sixth/oracle.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "sixth/errors.hpp"

namespace sixth::oracle {

namespace {

constexpr long double sqrt3l = 1.732050807568877293527446341505872367L;
constexpr double verify_tol = 1e-12;

constexpr std::array<std::array<int, 7>, 7> binomial = {{
    {1, 0, 0, 0, 0, 0, 0},
    {1, 1, 0, 0, 0, 0, 0},
    {1, 2, 1, 0, 0, 0, 0},
    {1, 3, 3, 1, 0, 0, 0},
    {1, 4, 6, 4, 1, 0, 0},
    {1, 5, 10, 10, 5, 1, 0},
    {1, 6, 15, 20, 15, 6, 1},
}};

// j-th derivative of sin(a x) / cos(a x) divided by a^j.
long double dsin(long double s, long double c, int j) {
  switch (j & 3) {
    case 0: return s;
    case 1: return c;
    case 2: return -s;
    default: return -c;
  }
}
long double dcos(long double s, long double c, int j) {
  switch (j & 3) {
    case 0: return c;
    case 1: return -s;
    case 2: return -c;
    default: return s;
  }
}

// Leibniz rule for d^k [trig(a x) * hyp(b x)].
template <class Trig>
long double product_derivative(Trig trig, long double ts, long double tc, long double a,
                               bool hyp_is_sinh, long double hs, long double hc, long double b,
                               int k) {
  long double sum = 0.0L;
  for (int j = 0; j <= k; ++j) {
    const int r = k - j;
    const bool sinh_now = hyp_is_sinh == (r % 2 == 0);
    sum += binomial[k][j] * std::pow(a, j) * trig(ts, tc, j) * std::pow(b, r) *
           (sinh_now ? hs : hc);
  }
  return sum;
}

double relative(double closed, double quad) {
  return std::fabs(closed - quad) / std::fmax(std::fabs(quad), 1e-30);
}

VerificationReport make_report(FormulaKind kind, Parity parity, int n, int m,
                               FormulaVariant variant, double closed, double quad) {
  VerificationReport r;
  r.kind = kind;
  r.parity = parity;
  r.n = n;
  r.m = m;
  r.variant = variant;
  r.documented_misprint = has_misprint(to_string(kind), parity, n, m);
  r.closed_form = closed;
  r.quadrature = quad;
  r.rel_discrepancy = relative(closed, quad);
  r.pass = r.rel_discrepancy < VerificationReport::threshold;
  return r;
}

double closed_form(const Basis& basis, FormulaKind kind, Parity parity, int n, int m,
                   FormulaVariant variant) {
  switch (kind) {
    case FormulaKind::beta: return beta(basis, parity, n, m, variant);
    case FormulaKind::gamma: return gamma(basis, parity, n, m, variant);
    default: return chi(basis, n, m, variant);
  }
}

// Integrals on two nested rules from tabulated values; falls back to the
// adaptive driver when the two disagree.
class TableSet {
 public:
  TableSet(const Basis& basis, double wavenumber)
      : basis_(basis),
        coarse_(QuadratureRule::composite(panels_for_wavenumber(wavenumber))),
        fine_(QuadratureRule::composite(2 * panels_for_wavenumber(wavenumber))) {}

  const DirectMode& mode(Parity parity, int m) {
    auto key = std::make_pair(parity, m);
    auto it = modes_.find(key);
    if (it == modes_.end()) {
      it = modes_.emplace(key, DirectMode(parity, basis_.lambda(parity, m))).first;
    }
    return it->second;
  }

  // <psi_a^(ka), psi_b^(kb)>; b == 0 with even parity means the constant 1.
  double inner(Parity pa, int a, int ka, Parity pb, int b, int kb) {
    const auto& ta = table(pa, a, ka);
    const auto& tb = table(pb, b, kb);
    auto [coarse, fine, magnitude] = combine(ta, tb);
    if (std::fabs(fine - coarse) < verify_tol * std::fmax(1.0L, magnitude)) {
      return static_cast<double>(fine);
    }
    const DirectMode& ma = mode(pa, a);
    const DirectMode& mb = mode(pb, b);
    auto f = [&](long double x) { return ma.eval(x, ka) * mb.eval(x, kb); };
    const double k = std::fmax(ma.lambda(), mb.lambda());
    return static_cast<double>(adaptive_integrate(f, verify_tol, k).value);
  }

 private:
  struct Table {
    std::vector<long double> coarse, fine;
  };

  const Table& table(Parity parity, int m, int k) {
    auto key = std::make_tuple(parity, m, k);
    auto it = tables_.find(key);
    if (it == tables_.end()) {
      const DirectMode& md = mode(parity, m);
      it = tables_.emplace(key, Table{tabulate(coarse_, md, k), tabulate(fine_, md, k)}).first;
    }
    return it->second;
  }

  std::tuple<long double, long double, long double> combine(const Table& a, const Table& b) const {
    long double coarse = 0.0L, fine = 0.0L, magnitude = 0.0L;
    for (std::size_t i = 0; i < coarse_.nodes.size(); ++i) {
      coarse += coarse_.weights[i] * a.coarse[i] * b.coarse[i];
    }
    for (std::size_t i = 0; i < fine_.nodes.size(); ++i) {
      const long double v = a.fine[i] * b.fine[i];
      fine += fine_.weights[i] * v;
      magnitude += fine_.weights[i] * std::fabs(v);
    }
    return {coarse, fine, magnitude};
  }

  const Basis& basis_;
  QuadratureRule coarse_, fine_;
  std::map<std::pair<Parity, int>, DirectMode> modes_;
  std::map<std::tuple<Parity, int, int>, Table> tables_;
};

}  // namespace

DirectMode::DirectMode(Parity parity, double lambda) : parity_(parity), lambda_(lambda) {
  if (!(lambda >= 0.0) || lambda > max_lambda) {
    throw InvalidArgument("direct evaluation needs 0 <= lambda <= 3000, got " +
                          std::to_string(lambda));
  }
  if (lambda == 0.0) {
    if (parity != Parity::even) throw InvalidArgument("lambda = 0 is only an even eigenvalue");
    return;
  }
  const long double l = lambda_;
  const long double s = sqrt3l * l;
  const long double sn = std::sin(l), cs = std::cos(l);
  const long double ch = std::cosh(s), sh = std::sinh(s);
  const long double ch2 = std::cosh(2 * s);
  const long double s2 = std::sin(2 * l), c2 = std::cos(2 * l);
  const long double hs = std::sinh(s / 2), hc = std::cosh(s / 2);
  const long double ha = std::sin(l / 2), hb = std::cos(l / 2);
  if (parity == Parity::even) {
    const long double d = std::sin(4 * l) - 6 * l * (c2 - 2) + 2 * l * ch2 + 2 * s2 * ch * ch +
                          ch * (sn - 3 * std::sin(3 * l) + 4 * l * (std::cos(3 * l) - 3 * cs)) +
                          4 * sqrt3l * sn * sn * sh * (cs - ch);
    norm_ = 2 * std::sqrt(l / d) * (cs - ch);
    hyp_ = 4 * sn / (cs - ch);
    first_ = -hb * hs;   // sin(l x/2) sinh(s x/2)
    second_ = ha * hc;   // cos(l x/2) cosh(s x/2)
  } else {
    const long double d = 12 * l - 3 * s2 - std::sin(4 * l) + 10 * l * c2 - (s2 - 2 * l) * ch2 -
                          4 * sqrt3l * cs * cs * sh * (cs + ch) +
                          2 * cs * ch * (4 * l * (c2 + 2) - 3 * s2);
    norm_ = 2 * std::sqrt(l / d) * (cs + ch);
    hyp_ = 4 * cs / (cs + ch);
    first_ = -hb * hc;   // sin(l x/2) cosh(s x/2)
    second_ = ha * hs;   // cos(l x/2) sinh(s x/2)
  }
}

long double DirectMode::eval(long double x, int k) const {
  if (lambda_ == 0.0L) return k == 0 ? 1.0L : 0.0L;
  const long double l = lambda_;
  const long double a = l / 2, b = sqrt3l * l / 2;
  const long double ts = std::sin(a * x), tc = std::cos(a * x);
  const long double hs = std::sinh(b * x), hc = std::cosh(b * x);
  const long double ms = std::sin(l * x), mc = std::cos(l * x);
  const long double lk = std::pow(l, k);
  if (parity_ == Parity::even) {
    const long double p1 = product_derivative(dsin, ts, tc, a, true, hs, hc, b, k);
    const long double p2 = product_derivative(dcos, ts, tc, a, false, hs, hc, b, k);
    return norm_ * (hyp_ * (first_ * p1 + second_ * p2) + lk * dcos(ms, mc, k));
  }
  const long double p1 = product_derivative(dsin, ts, tc, a, false, hs, hc, b, k);
  const long double p2 = product_derivative(dcos, ts, tc, a, true, hs, hc, b, k);
  return norm_ * (hyp_ * (first_ * p1 + second_ * p2) + lk * dsin(ms, mc, k));
}

std::vector<long double> tabulate(const QuadratureRule& rule, const DirectMode& mode, int k) {
  std::vector<long double> out(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) out[i] = mode.eval(rule.nodes[i], k);
  return out;
}

std::string to_string(FormulaKind k) {
  switch (k) {
    case FormulaKind::beta: return "beta";
    case FormulaKind::gamma: return "gamma";
    default: return "chi";
  }
}

VerificationReport verify_formula(const Basis& basis, FormulaKind kind, Parity parity, int n_or_p,
                                  int m, FormulaVariant variant) {
  if (kind == FormulaKind::chi) {
    const int p = n_or_p;
    const double closed = chi(basis, p, m, variant);
    const DirectMode mode(Parity::even, basis.lambda(Parity::even, m));
    auto f = [&](long double x) { return std::pow(x, p) * mode.eval(x, 0); };
    const double quad = static_cast<double>(adaptive_integrate(f, verify_tol, mode.lambda()).value);
    return make_report(kind, Parity::even, p, m, variant, closed, quad);
  }
  const int n = n_or_p;
  const int k = kind == FormulaKind::beta ? 2 : 4;
  const double closed = closed_form(basis, kind, parity, n, m, variant);
  const DirectMode row(parity, basis.lambda(parity, n));
  const DirectMode col(parity, m == 0 ? 0.0 : basis.lambda(parity, m));
  auto f = [&](long double x) { return row.eval(x, k) * col.eval(x, 0); };
  const double wave = std::fmax(row.lambda(), col.lambda());
  const double quad = static_cast<double>(adaptive_integrate(f, verify_tol, wave).value);
  return make_report(kind, parity, n, m, variant, closed, quad);
}

std::vector<VerificationReport> verify_sweep(const Basis& basis, int max_index,
                                             bool include_printed) {
  std::vector<VerificationReport> out;
  if (max_index <= 0) return out;
  if (max_index > basis.M()) {
    throw InvalidArgument("sweep index " + std::to_string(max_index) + " exceeds basis order");
  }
  const double wave = std::fmax(basis.lambda(Parity::even, max_index),
                                basis.lambda(Parity::odd, max_index));
  TableSet tables(basis, wave);

  auto add = [&](FormulaKind kind, Parity parity, int n, int m, double quad) {
    out.push_back(make_report(kind, parity, n, m, FormulaVariant::corrected,
                              closed_form(basis, kind, parity, n, m, FormulaVariant::corrected),
                              quad));
    if (include_printed && out.back().documented_misprint) {
      out.push_back(make_report(kind, parity, n, m, FormulaVariant::printed,
                                closed_form(basis, kind, parity, n, m, FormulaVariant::printed),
                                quad));
    }
  };

  for (Parity parity : {Parity::even, Parity::odd}) {
    for (int n = 1; n <= max_index; ++n) {
      for (int m = 1; m <= max_index; ++m) {
        add(FormulaKind::beta, parity, n, m, tables.inner(parity, n, 2, parity, m, 0));
        add(FormulaKind::gamma, parity, n, m, tables.inner(parity, n, 4, parity, m, 0));
      }
      if (parity == Parity::even) {
        add(FormulaKind::gamma, parity, n, 0, tables.inner(parity, n, 4, Parity::even, 0, 0));
      }
    }
  }

  // chi: tabulate x^p on the same nested rules through a plain adaptive call
  // per entry; there are only 6 * max_index of them.
  for (int p = 2; p <= 12; p += 2) {
    for (int m = 1; m <= max_index; ++m) {
      const DirectMode& mode = tables.mode(Parity::even, m);
      auto f = [&](long double x) { return std::pow(x, p) * mode.eval(x, 0); };
      const double quad =
          static_cast<double>(adaptive_integrate(f, verify_tol, mode.lambda()).value);
      add(FormulaKind::chi, Parity::even, p, m, quad);
    }
  }
  return out;
}

Eigen::MatrixXd gram_matrix(const Basis& basis, Parity parity, int count) {
  if (count < 1 || count > basis.M()) throw InvalidArgument("gram size out of range");
  TableSet tables(basis, basis.lambda(parity, count));
  Eigen::MatrixXd G(count, count);
  for (int a = 1; a <= count; ++a) {
    for (int b = a; b <= count; ++b) {
      G(a - 1, b - 1) = G(b - 1, a - 1) = tables.inner(parity, a, 0, parity, b, 0);
    }
  }
  return G;
}

double cross_parity_max(const Basis& basis, int count) {
  if (count < 1 || count > basis.M()) throw InvalidArgument("count out of range");
  TableSet tables(basis, std::fmax(basis.lambda(Parity::even, count),
                                   basis.lambda(Parity::odd, count)));
  double worst = 0.0;
  for (int a = 0; a <= count; ++a) {
    for (int b = 1; b <= count; ++b) {
      worst = std::fmax(worst, std::fabs(tables.inner(Parity::even, a, 0, Parity::odd, b, 0)));
    }
  }
  return worst;
}

double self_adjointness_defect(const Basis& basis, Parity parity, int count) {
  if (count < 1 || count > basis.M()) throw InvalidArgument("count out of range");
  const double lmax = basis.lambda(parity, count);
  TableSet tables(basis, lmax);
  double worst = 0.0;
  for (int n = 1; n <= count; ++n) {
    for (int m = 1; m <= count; ++m) {
      const double lhs = tables.inner(parity, n, 6, parity, m, 0);
      const double rhs = tables.inner(parity, n, 0, parity, m, 6);
      worst = std::fmax(worst, std::fabs(lhs - rhs));
    }
  }
  return worst / std::pow(lmax, 6);
}

double residual_scan(const BvpSpec& spec, const Basis& basis, const CoefficientSet& solution,
                     int points) {
  if (points < 1) throw InvalidArgument("residual scan needs at least one point");
  double worst = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double x = -1.0 + 2.0 * i / (points + 1);
    double lu = spec.a0 * synthesize(basis, solution, x, 0);
    lu += spec.a6 * synthesize(basis, solution, x, 6);
    if (spec.a4 != 0.0) lu += spec.a4 * synthesize(basis, solution, x, 4);
    if (spec.a2 != 0.0) lu += spec.a2 * synthesize(basis, solution, x, 2);
    worst = std::fmax(worst, std::fabs(lu - spec.forcing_at(x)));
  }
  return worst;
}

}  // namespace sixth::oracle
