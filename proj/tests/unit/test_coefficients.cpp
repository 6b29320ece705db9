#include <cmath>

#include "doctest.h"
#include "output.hpp"
#include "sixth/coefficients.hpp"
#include "sixth/errors.hpp"
#include "sixth/oracle.hpp"

using namespace sixth;
using doctest::Approx;

TEST_CASE("coefficients against frozen quadrature values") {
  const Basis b(20);
  const auto E = Parity::even, O = Parity::odd;
  // 30-digit quadrature of the defining integrals
  CHECK(beta(b, E, 1, 1) == Approx(-10.1936255349).epsilon(1e-10));
  CHECK(beta(b, E, 1, 2) == Approx(-2.6227643702).epsilon(1e-10));
  CHECK(beta(b, E, 1, 3) == Approx(1.64058661934).epsilon(1e-10));
  CHECK(beta(b, E, 2, 2) == Approx(-40.4385528485).epsilon(1e-10));
  CHECK(beta(b, E, 3, 3) == Approx(-90.3546422467).epsilon(1e-10));
  CHECK(beta(b, O, 1, 1) == Approx(-2.52598960395).epsilon(1e-10));
  CHECK(beta(b, O, 1, 2) == Approx(-0.976707428643).epsilon(1e-10));
  CHECK(gamma(b, E, 1, 1) == Approx(244.094937128).epsilon(1e-10));
  CHECK(gamma(b, E, 1, 2) == Approx(-17.2974439564).epsilon(1e-10));
  CHECK(gamma(b, E, 1, 0) == Approx(147.816095313).epsilon(1e-10));
  CHECK(gamma(b, O, 2, 2) == Approx(937.852332683).epsilon(1e-10));
  CHECK(chi(b, 2, 1) == Approx(0.39215960334068).epsilon(1e-12));
  CHECK(chi(b, 12, 1) == Approx(0.13067430482384).epsilon(1e-11));
}

TEST_CASE("gamma_n0 closed form") {
  const Basis b(30);
  for (int n = 1; n <= 30; ++n) {
    const Mode& m = b.mode(Parity::even, n);
    const double l = m.lambda;
    CHECK(gamma(b, Parity::even, n, 0) ==
          Approx(6.0 * m.norm_c.value() * l * l * l * std::sin(l)).epsilon(1e-13));
  }
}

TEST_CASE("argument checks") {
  const Basis b(5);
  CHECK_THROWS_AS(beta(b, Parity::even, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(beta(b, Parity::even, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(beta(b, Parity::odd, 6, 1), InvalidArgument);
  CHECK_THROWS_AS(gamma(b, Parity::odd, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(gamma(b, Parity::even, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(chi(b, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(chi(b, 14, 1), InvalidArgument);
  CHECK_THROWS_AS(chi(b, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(chi(b, 2, 0), InvalidArgument);
}

TEST_CASE("even power coefficients") {
  const Basis b(8);
  for (int p = 0; p <= 12; p += 2) CHECK(even_power_coefficient(b, p, 0) == Approx(2.0 / (p + 1)));
  for (int m = 1; m <= 8; ++m) CHECK(even_power_coefficient(b, 0, m) == 0.0);
  CHECK(even_power_coefficient(b, 6, 3) == chi(b, 6, 3));
}

TEST_CASE("closed forms agree with quadrature up to index 20") {
  const Basis b(20);
  const auto reports = oracle::verify_sweep(b, 20, false);
  int beta_count = 0, gamma_count = 0, chi_count = 0;
  for (const auto& r : reports) {
    CAPTURE(oracle::to_string(r.kind));
    CAPTURE(r.n);
    CAPTURE(r.m);
    CHECK(r.variant == FormulaVariant::corrected);
    CHECK(r.rel_discrepancy < 1e-8);
    CHECK(r.pass);
    beta_count += r.kind == oracle::FormulaKind::beta;
    gamma_count += r.kind == oracle::FormulaKind::gamma;
    chi_count += r.kind == oracle::FormulaKind::chi;
  }
  CHECK(beta_count == 2 * 400);
  CHECK(gamma_count == 2 * 400 + 20);
  CHECK(chi_count == 6 * 20);
}

TEST_CASE("published variants") {
  const Basis b(10);
  const auto E = Parity::even, O = Parity::odd;
  CHECK(has_misprint("beta", E, 3, 3));
  CHECK_FALSE(has_misprint("beta", E, 3, 4));
  CHECK(has_misprint("beta", O, 3, 4));
  CHECK(has_misprint("chi", E, 12, 1));
  CHECK_FALSE(has_misprint("chi", E, 10, 1));
  CHECK_FALSE(has_misprint("gamma", O, 2, 2));

  // diagonal denominator four times too large
  CHECK(beta(b, E, 4, 4, FormulaVariant::printed) ==
        Approx(0.25 * beta(b, E, 4, 4)).epsilon(1e-12));
  // x^12 prefactor off by lambda^2
  const double l = b.lambda(E, 2);
  CHECK(chi(b, 12, 2, FormulaVariant::printed) == Approx(l * l * chi(b, 12, 2)).epsilon(1e-12));
  // forms without a misprint do not depend on the variant
  CHECK(beta(b, E, 2, 5, FormulaVariant::printed) == beta(b, E, 2, 5));
  CHECK(gamma(b, O, 3, 1, FormulaVariant::printed) == gamma(b, O, 3, 1));

  for (auto [kind, parity, n, m] :
       {std::tuple{oracle::FormulaKind::beta, O, 2, 5}, std::tuple{oracle::FormulaKind::beta, O, 3, 3},
        std::tuple{oracle::FormulaKind::beta, E, 2, 2}, std::tuple{oracle::FormulaKind::chi, E, 12, 1}}) {
    const auto printed = oracle::verify_formula(b, kind, parity, n, m, FormulaVariant::printed);
    CHECK(printed.documented_misprint);
    CHECK_FALSE(printed.pass);
    const auto fixed = oracle::verify_formula(b, kind, parity, n, m);
    CHECK(fixed.pass);
  }
}

TEST_CASE("operator matrices") {
  const Basis b(12);
  const auto six = operator_matrix(b, Parity::odd, OperatorKind::sixth_derivative);
  for (int n = 1; n <= 12; ++n) {
    for (int m = 1; m <= 12; ++m) {
      CHECK(six.entries(n - 1, m - 1) == (n == m ? -std::pow(b.lambda(Parity::odd, n), 6) : 0.0));
    }
  }
  CHECK(six.row0.size() == 0);

  const auto g = operator_matrix(b, Parity::even, OperatorKind::fourth_derivative);
  REQUIRE(g.size() == 12);
  REQUIRE(g.row0.size() == 12);
  for (int n = 1; n <= 12; ++n) {
    CHECK(g.row0[n - 1] == gamma(b, Parity::even, n, 0));
    for (int m = 1; m <= 12; ++m) CHECK(g.entries(n - 1, m - 1) == gamma(b, Parity::even, n, m));
  }
  const auto be = operator_matrix(b, Parity::odd, OperatorKind::second_derivative);
  CHECK(be.entries(2, 6) == beta(b, Parity::odd, 3, 7));
  CHECK(operator_matrix(b, Parity::odd, OperatorKind::fourth_derivative).row0.size() == 0);
}

TEST_CASE("off-diagonal decay rates") {
  const Basis b(100);
  std::vector<double> m, bv, gv;
  for (int j = 50; j <= 100; ++j) {
    m.push_back(j);
    bv.push_back(beta(b, Parity::even, 5, j));
    gv.push_back(gamma(b, Parity::even, 3, j));
  }
  const auto fb = cli::fit_power_law(m, bv);
  const auto fg = cli::fit_power_law(m, gv);
  CHECK(fb.exponent >= -2.2);
  CHECK(fb.exponent <= -1.7);
  CHECK(fg.exponent >= -3.3);
  CHECK(fg.exponent <= -2.7);
  MESSAGE("beta_5m ~ " << fb.prefactor << " m^" << fb.exponent << ", gamma_3m ~ " << fg.prefactor
                       << " m^" << fg.exponent);
}

TEST_CASE("projection and synthesis") {
  const Basis b(12);
  SUBCASE("a basis function projects to a unit vector") {
    const auto c = project([&](double x) { return b.eval(Parity::even, 3, x); }, b);
    CHECK(std::fabs(c.u0c) < 1e-10);
    for (int n = 1; n <= 12; ++n) {
      CHECK(std::fabs(c.uc[n - 1] - (n == 3 ? 1.0 : 0.0)) < 1e-10);
      CHECK(std::fabs(c.us[n - 1]) < 1e-10);
    }
  }
  SUBCASE("round trip of an odd mode") {
    const auto c = project([&](double x) { return b.eval(Parity::odd, 2, x); }, b);
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.0 + 0.02 * i;
      CHECK(std::fabs(synthesize(b, c, x) - b.eval(Parity::odd, 2, x)) < 1e-9);
    }
  }
  SUBCASE("mean coefficient is the plain integral") {
    const auto c = project([](double x) { return std::pow(x * x - 1.0, 6); }, b);
    CHECK(c.u0c == Approx(2048.0 / 3003.0).epsilon(1e-14));
    CHECK(c.us.cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("odd polynomial has no even part") {
    const auto c = project([](double x) { return x * x * x - x; }, b);
    CHECK(std::fabs(c.u0c) < 1e-12);
    CHECK(c.uc.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(c.us.cwiseAbs().maxCoeff() > 1e-3);
  }
  SUBCASE("zero set") {
    const auto z = CoefficientSet::zeros(12);
    for (double x : {-1.0, 0.0, 0.4}) CHECK(synthesize(b, z, x) == 0.0);
    CHECK_THROWS_AS(synthesize(b, z, 1.5), InvalidArgument);
    CHECK_THROWS_AS(synthesize(b, CoefficientSet::zeros(13), 0.0), InvalidArgument);
    CHECK(synthesize(b, CoefficientSet::zeros(5), 0.0) == 0.0);
  }
}
