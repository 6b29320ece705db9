// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cfenv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "output.hpp"
#include "sixth/galerkin.hpp"
#include "sixth/oracle.hpp"

using namespace sixth;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail, double seconds) {
  std::printf("%s %2d %-34s %s (%.3f s)\n", ok ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class Fn>
void criterion(int id, const char* name, Fn&& fn) {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
    ok = false;
  }
  report(id, name, ok, detail, std::chrono::duration<double>(Clock::now() - t0).count());
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

int run_cli(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  out = o.str();
  return code;
}

double max_model_error(const Basis& b, const CoefficientSet& u) {
  double e = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = i == 200 ? 1.0 : -1.0 + 0.01 * i;
    e = std::fmax(e, std::fabs(synthesize(b, u, x) - model_exact_solution(x)));
  }
  return e;
}

std::string tier(double e) {
  if (e <= 5e-13) return "stretch tier (<=5e-13)";
  if (e <= 1e-10) return "required tier (<=1e-10)";
  return "no tier";
}

cli::PowerFit coefficient_fit(const CoefficientSet& u) {
  std::vector<double> n, v;
  for (int j = 50; j <= u.M; ++j) {
    n.push_back(j);
    v.push_back(u.uc[j - 1]);
  }
  return cli::fit_power_law(n, v);
}

}  // namespace

int main() {
  // Printed table: m, lambda_c, (m+1/6)pi, lambda_s, (m-1/3)pi
  const double table[6][4] = {
      {3.66606496814, 3.66519142919, 2.07175679767, 2.09439510239},
      {6.80678029161, 6.80678408278, 5.23608751229, 5.23598775598},
      {9.94837675280, 9.94837673637, 8.37757997731, 8.37758040957},
      {13.0899693899, 13.0899693900, 11.5191730650, 11.5191730632},
      {16.2315620436, 16.2315620435, 14.6607657167, 14.6607657168},
      {19.3731546971, 19.3731546971, 17.8023583704, 17.8023583703},
  };
  // 40-digit roots for the two entries whose last printed digit is off by one
  const double lambda5c = 16.23156204354757357, lambda6s = 17.80235837034219686;

  criterion(1, "eigenvalue table", [&](std::string& d) {
    const auto t0 = Clock::now();
    std::string out;
    if (run_cli({"eigenvalues", "--m-max", "6"}, out) != 0) return false;
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    const auto rows = parse_csv(out);
    if (rows.size() != 8) return false;
    int strict = 0;
    double worst = 0.0;
    bool ok = rows[1][1] == "0";
    for (int m = 1; m <= 6; ++m) {
      for (int c = 0; c < 4; ++c) {
        const double v = std::stod(rows[m + 1][c + 1]);
        const double dev = std::fabs(v - table[m - 1][c]);
        const bool misrounded = (m == 5 && c == 0) || (m == 6 && c == 2);
        if (misrounded) {
          const double ref = m == 5 ? lambda5c : lambda6s;
          ok = ok && dev < 1e-10 && std::fabs(v - ref) < 1e-13;
        } else {
          worst = std::fmax(worst, dev);
          strict += dev < 5e-11;
        }
      }
    }
    ok = ok && strict == 22 && seconds < 1.0;
    d = std::to_string(strict) + "/22 entries within 5e-11 (max dev " + fmt(worst) +
        "); lambda5c=" + rows[6][1] + ", lambda6s=" + rows[7][3] +
        " match 40-digit roots (printed last digit off by one); runtime " + fmt(seconds) + " s";
    return ok;
  });

  criterion(2, "asymptotic agreement at m=6", [&](std::string& d) {
    const double ec = std::fabs(solve_eigenvalue(Parity::even, 6).lambda - eigenvalue_asymptotic(Parity::even, 6));
    const double es = std::fabs(solve_eigenvalue(Parity::odd, 6).lambda - eigenvalue_asymptotic(Parity::odd, 6));
    d = "even " + fmt(ec) + " < 1e-10, odd " + fmt(es) + " < 1e-9";
    return ec < 1e-10 && es < 1e-9;
  });

  const Basis b100(100);
  SteadySolution s1, s2;

  criterion(3, "model I error", [&](std::string& d) {
    const auto t0 = Clock::now();
    const Basis b(100);
    s1 = solve_steady(BvpSpec::model_I(), b);
    const double e = max_model_error(b, s1.coefficients);
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    d = "max error " + fmt(e) + ", " + tier(e) + ", u0c-2048/3003 " +
        fmt(s1.coefficients.u0c - 2048.0 / 3003.0) + ", runtime " + fmt(seconds) + " s";
    return e <= 1e-10 && seconds < 5.0;
  });

  criterion(4, "model II error and pivots", [&](std::string& d) {
    const auto t0 = Clock::now();
    const Basis b(100);
    s2 = solve_steady(BvpSpec::model_II(), b);
    const double e = max_model_error(b, s2.coefficients);
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool negative = s2.path == SolverPath::ldlt && s2.pivots.size() == 100 &&
                          (s2.pivots.array() < 0.0).all();
    d = "max error " + fmt(e) + ", " + tier(e) + ", LDL^T pivots " +
        (negative ? "all negative" : "NOT all negative") + ", runtime " + fmt(seconds) + " s";
    return e <= 1e-10 && negative && seconds < 5.0;
  });

  criterion(5, "solution coefficient decay", [&](std::string& d) {
    const auto f1 = coefficient_fit(s1.coefficients);
    const auto f2 = coefficient_fit(s2.coefficients);
    d = "model I " + fmt(f1.prefactor) + " n^" + fmt(f1.exponent) + ", model II " +
        fmt(f2.prefactor) + " n^" + fmt(f2.exponent) + " (window [-8.3, -7.6])";
    auto in = [](double x) { return x >= -8.3 && x <= -7.6; };
    return in(f1.exponent) && in(f2.exponent);
  });

  criterion(6, "operator coefficient decay", [&](std::string& d) {
    std::vector<double> m, bv, gv;
    for (int j = 50; j <= 100; ++j) {
      m.push_back(j);
      bv.push_back(beta(b100, Parity::even, 5, j));
      gv.push_back(gamma(b100, Parity::even, 3, j));
    }
    const auto fb = cli::fit_power_law(m, bv);
    const auto fg = cli::fit_power_law(m, gv);
    d = "beta_5m " + fmt(fb.prefactor) + " m^" + fmt(fb.exponent) + " in [-2.2,-1.7], gamma_3m " +
        fmt(fg.prefactor) + " m^" + fmt(fg.exponent) + " in [-3.3,-2.7]";
    return fb.exponent >= -2.2 && fb.exponent <= -1.7 && fg.exponent >= -3.3 && fg.exponent <= -2.7;
  });

  criterion(7, "orthonormality and self-adjointness", [&](std::string& d) {
    const Basis b(30);
    double gram = 0.0, sa = 0.0;
    for (Parity p : {Parity::even, Parity::odd}) {
      const Eigen::MatrixXd G = oracle::gram_matrix(b, p, 30);
      gram = std::fmax(gram, (G - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff());
      sa = std::fmax(sa, oracle::self_adjointness_defect(b, p, 15));
    }
    d = "Gram defect " + fmt(gram) + " < 1e-10, self-adjointness " + fmt(sa) + " < 1e-8 (relative)";
    return gram < 1e-10 && sa < 1e-8;
  });

  criterion(8, "closed form vs quadrature", [&](std::string& d) {
    const auto t0 = Clock::now();
    std::string out;
    const int code = run_cli({"verify", "--max-index", "20", "--format", "json"}, out);
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    const auto j = cli::json::parse(out);
    int beta = 0, gamma = 0, chi = 0, bad = 0;
    for (const auto& r : j["reports"]) {
      if (r["variant"] != "corrected") continue;
      const std::string k = r["kind"];
      beta += k == "beta";
      gamma += k == "gamma";
      chi += k == "chi";
      bad += r["pass"] != true;
    }
    const int documented = j["summary"]["documented_discrepancies"];
    d = std::to_string(beta) + " beta, " + std::to_string(gamma) + " gamma, " + std::to_string(chi) +
        " chi entries, " + std::to_string(bad) + " failures at 1e-8; " + std::to_string(documented) +
        " documented discrepancies in the printed forms; runtime " + fmt(seconds) + " s";
    return code == 0 && bad == 0 && beta == 800 && gamma == 820 && chi == 120 && seconds < 30.0;
  });

  criterion(9, "semi-discrete properties", [&](std::string& d) {
    const Basis b(100);
    const auto sys = assemble_semi_discrete(b, 0.0, 0.0, CoefficientSet::zeros(100));
    auto init = CoefficientSet::zeros(100);
    init.uc[0] = 1.0;
    const double l6 = std::pow(b.lambda(Parity::even, 1), 6);
    const double T = 1e-3;
    double factor_dev = 0.0, err[2];
    for (int r = 0; r < 2; ++r) {
      const int steps = 100 << r;
      const double dt = T / steps;
      const auto tr = evolve(sys, init, dt, steps, 0.5);
      const double g = (1.0 - 0.5 * dt * l6) / (1.0 + 0.5 * dt * l6);
      for (std::size_t k = 1; k < tr.size(); ++k) {
        factor_dev = std::fmax(factor_dev, std::fabs(tr[k].uc[0] - g * tr[k - 1].uc[0]));
      }
      err[r] = std::fabs(tr.back().uc[0] - std::exp(-l6 * T));
    }
    const double order = std::log2(err[0] / err[1]);

    const BvpSpec m2 = BvpSpec::model_II();
    std::vector<ForcingTerm> g;
    for (const auto& t : m2.forcing) g.push_back({t.power, -t.coefficient});
    const auto sys2 = assemble_semi_discrete(b, m2.a2, 0.0, forcing_coefficients(b, g), m2.a0);
    const auto tr = evolve(sys2, CoefficientSet::zeros(100), 1e-3, 2000, 1.0, 2000);
    const auto& s = s2.coefficients;
    const double dev = std::fmax(std::fabs(tr.back().u0c - s.u0c),
                                 (tr.back().uc - s.uc).cwiseAbs().maxCoeff());
    d = "per-step factor dev " + fmt(factor_dev) + " < 1e-14, observed order " + fmt(order) +
        " (dt errors " + fmt(err[0]) + ", " + fmt(err[1]) + "), long-time vs steady " + fmt(dev) +
        " < 1e-8";
    return factor_dev < 1e-14 && order > 1.9 && order < 2.1 && dev < 1e-8;
  });

  criterion(10, "overflow robustness", [&](std::string& d) {
    std::feclearexcept(FE_ALL_EXCEPT);
    const Basis b200 = build_basis(200);
    const Basis b150(150);
    const SteadySolution s = solve_steady(BvpSpec::model_II(), b150);
    const int flags = std::fetestexcept(FE_OVERFLOW | FE_INVALID | FE_DIVBYZERO);
    bool finite = s.coefficients.uc.allFinite() && std::isfinite(s.coefficients.u0c);
    for (Parity p : {Parity::even, Parity::odd}) {
      for (int m = 1; m <= 200; ++m) {
        const double c = b200.mode(p, m).norm_c.value();
        finite = finite && std::isfinite(c) && c != 0.0;
      }
    }
    const double lmax = b200.lambda(Parity::even, 200);
    d = std::string("lambda_200 = ") + fmt(lmax) + " (cosh(2 sqrt3 lambda) ~ e^" +
        fmt(2.0 * std::numbers::sqrt3 * lmax) + "), FP flags " +
        (flags == 0 ? "clear" : std::string("RAISED:") + ((flags & FE_OVERFLOW) ? " overflow" : "") +
                                    ((flags & FE_INVALID) ? " invalid" : "") +
                                    ((flags & FE_DIVBYZERO) ? " divbyzero" : "")) +
        ", all constants and coefficients finite: " + (finite ? "yes" : "no") +
        ", M=150 error " + fmt(max_model_error(b150, s.coefficients));
    return flags == 0 && finite;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
