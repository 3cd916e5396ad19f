#include <catch2/catch_amalgamated.hpp>

#include "uclab/moduli.hpp"
#include "uclab/rng.hpp"

using namespace uclab;

TEST_CASE("iterated exponentials, small arguments") {
  CHECK(iterated_exp(2, 0.0).value() == Catch::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(iterated_exp(3, 0.0).value() == Catch::Approx(std::exp(std::exp(1.0))).epsilon(1e-14));
  CHECK(iterated_exp(3, 1.0).value() == Catch::Approx(3.814e6).epsilon(1e-3));
}

TEST_CASE("iterated exponentials, nested representation") {
  // e_2(10): log = e^10, representable at depth 1
  auto a = iterated_exp(2, 10.0);
  CHECK(a.depth == 1);
  CHECK(a.log_mag == Catch::Approx(std::exp(10.0)));
  // e_2(800): log overflows, switches to depth-2 nesting
  auto b = iterated_exp(2, 800.0);
  CHECK(b.depth == 2);
  CHECK(b.log_mag == Catch::Approx(800.0));
  CHECK_FALSE(b.saturated);
  // e_3(163.84): depth 2 with log(log) = e^{163.84}
  auto c3 = iterated_exp(3, 163.84);
  CHECK(c3.depth == 2);
  CHECK(c3.log_mag == Catch::Approx(std::exp(163.84)));
}

TEST_CASE("LogScalar ordering is exact in the representable regime") {
  CounterRng rng(17u);
  for (int i = 0; i < 200; ++i) {
    double x = rng.uniform(-50.0, 50.0), y = rng.uniform(-50.0, 50.0);
    auto a = LogScalar::from_log(x), b = LogScalar::from_log(y);
    CHECK((compare(a, b) < 0) == (x < y));
  }
  auto big = iterated_exp(2, 7.0);
  auto small = iterated_exp(2, 6.4);
  CHECK(compare(small, big) < 0);
  // e_2 < e_3 at equal argument
  CHECK(compare(iterated_exp(2, 163.84), iterated_exp(3, 163.84)) < 0);
}

TEST_CASE("LogScalar arithmetic basics") {
  auto two = LogScalar::from_value(2.0);
  auto three = LogScalar::from_value(3.0);
  CHECK((two * three).value() == Catch::Approx(6.0).epsilon(1e-14));
  CHECK((two + three).value() == Catch::Approx(5.0).epsilon(1e-14));
  CHECK(pow(two, 10).value() == Catch::Approx(1024.0).epsilon(1e-12));
  CHECK((LogScalar::zero() + two).value() == Catch::Approx(2.0));
  // huge arithmetic does not overflow
  auto h1 = LogScalar::from_log(1e250);
  auto h2 = LogScalar::from_log(3e250);
  auto prod = h1 * h2;
  CHECK(prod.log_mag == Catch::Approx(4e250).epsilon(1e-12));
}

TEST_CASE("modulus evaluation") {
  SECTION("Phi identity branch and minus-log branch") {
    ModulusSpec phi;
    phi.kind = ModulusKind::PhiSingleLog;
    phi.c = 2.0;
    phi.beta = 1.5;
    double bp = std::exp(-2.0);
    CHECK(modulus_eval(phi, bp * 1.5) == Catch::Approx(bp * 1.5));
    double rho = 1e-8;
    CHECK(modulus_eval(phi, rho) == Catch::Approx(std::pow(std::abs(std::log(rho)), -1.5)));
    CHECK(modulus_eval(phi, 0.0) == 0.0);
  }
  SECTION("Psi nested-log value") {
    ModulusSpec psi;
    psi.kind = ModulusKind::PsiTripleLog;
    psi.rho0 = std::exp(-std::exp(1.0));
    psi.beta = 1.0;
    double rho = std::exp(-std::exp(std::exp(1.0)));
    CHECK(modulus_eval(psi, rho) == Catch::Approx(1.0).epsilon(1e-12));
  }
  SECTION("Theta continuity at zero and parameter validation") {
    ModulusSpec th;
    th.kind = ModulusKind::ThetaDoubleLog;
    th.rho0 = 0.25;
    th.beta = 2.0;
    CHECK(modulus_eval(th, 0.0) == 0.0);
    ModulusSpec bad = th;
    bad.beta = -1.0;
    CHECK_THROWS_AS(modulus_eval(bad, 0.1), std::invalid_argument);
    ModulusSpec badbp = th;
    badbp.rho0 = 0.9; // above e^-1
    CHECK_THROWS_AS(modulus_eval(badbp, 0.1), std::invalid_argument);
  }
  SECTION("piecewise monotone below the breakpoint") {
    for (auto kind : {ModulusKind::PhiSingleLog, ModulusKind::ThetaDoubleLog,
                      ModulusKind::PsiTripleLog}) {
      ModulusSpec m;
      m.kind = kind;
      m.beta = 0.7;
      m.c = 1.0;
      m.rho0 = kind == ModulusKind::PsiTripleLog ? std::exp(-std::exp(1.0)) : std::exp(-1.5);
      double bp = m.breakpoint();
      double prev = 0.0;
      for (int i = 1; i <= 1000; ++i) {
        double rho = bp * i / 1000.0 * 0.999;
        double v = modulus_eval(m, rho);
        CHECK(v >= prev - 1e-15);
        prev = v;
      }
    }
  }
}

TEST_CASE("solve_epsilon") {
  SECTION("reference roots") {
    double e1 = solve_epsilon(1.0, 1.0, std::exp(-10.0));
    CHECK(e1 == Catch::Approx(0.1262).margin(5e-4));
    double e2 = solve_epsilon(1.0, 1.0, std::exp(-100.0));
    CHECK(e2 == Catch::Approx(0.01048).margin(5e-4));
    CHECK(e1 <= 2.0 / 10.0);
    CHECK(e2 <= 2.0 / 100.0);
  }
  SECTION("residual and a-priori bound over random inputs") {
    CounterRng rng(99u);
    for (int i = 0; i < 100; ++i) {
      double beta = rng.uniform(0.3, 3.0);
      double c = rng.uniform(0.3, 4.0);
      double lnb = -rng.uniform(c + 0.5, 200.0);
      double b = std::exp(lnb);
      double e0 = solve_epsilon(beta, c, b);
      double resid = std::abs(beta * std::log(e0) - c / e0 - lnb) / std::abs(lnb);
      CHECK(resid <= 1e-12);
      CHECK(e0 <= (c + beta) / std::abs(lnb) + 1e-15);
    }
  }
  SECTION("no root above the breakpoint") {
    CHECK_THROWS_AS(solve_epsilon(1.0, 1.0, 0.9), std::domain_error);
  }
}

TEST_CASE("parameter selection") {
  SECTION("lambda = 16 delta^-16 / T^2 exactly") {
    auto p = parameter_selection(0.5, 4.0, 1.0, 1.0, 0.25);
    CHECK(p.lambda == Catch::Approx(65536.0).epsilon(1e-14));
  }
  SECTION("delta -> 1 limit recovers lambda_0 = 16/T^2") {
    auto p = parameter_selection(1.0 - 1e-12, 4.0, 1.0, 1.0, 0.25);
    CHECK(p.lambda == Catch::Approx(1.0).epsilon(1e-9));
  }
  SECTION("mu equation reproduced in log domain") {
    double delta = 0.6, s = 0.3, c = 0.02;
    auto p = parameter_selection(delta, 4.0, 1.0, c, s);
    // e_2(c d^-14) mu^{-1/4} = delta^s  <=>  log e_2 - (1/4) log mu = s ln delta
    double log_e2 = std::exp(c * std::pow(delta, -14.0));
    double log_mu = p.mu.log_value();
    CHECK(log_e2 - 0.25 * log_mu ==
          Catch::Approx(s * std::log(delta)).margin(1e-12 * std::abs(log_mu)));
  }
  SECTION("eps matches the closed form") {
    double delta = 0.5, c0 = 0.7, beta = 2.0;
    auto p = parameter_selection(delta, 4.0, c0, 1.0, 0.25, beta);
    CHECK(p.eps.log_value() == Catch::Approx(-2.0 * c0 * 16384.0 / beta).epsilon(1e-14));
  }
}

TEST_CASE("assembly flags vacuity and prefers the e_2 path") {
  double lhs = 1.0, N = 10.0, data = 0.5, s = 0.25, c = 0.01;
  auto r3 = assemble_final_bound(3, lhs, N, data, 0.5, s, c, 0.05, 0.9);
  CHECK(r3.lhs_dominated);
  CHECK(r3.vacuous); // e_3(c 16384) saturates
  CHECK(r3.exp_depth == 2);
  auto r2 = assemble_final_bound(2, lhs, N, data, 0.5, s, c, 0.05, 0.9);
  CHECK(r2.lhs_dominated);
  // e_2 path strictly smaller than e_3 path
  CHECK(compare(r2.rhs, r3.rhs) < 0);

  // with exact data (D = 0) the bound is genuinely quantitative
  auto rexact = assemble_final_bound(3, 0.3, N, 0.0, 0.5, s, c, 0.05, 0.9);
  CHECK(rexact.lhs_dominated);
  CHECK_FALSE(rexact.vacuous);
  CHECK(rexact.rhs.log_value() == Catch::Approx(s * std::log(0.5) + std::log(N)).epsilon(1e-12));
}

TEST_CASE("admissible delta interval validation") {
  auto iv = admissible_delta_interval(0.25, 0.7, 4.0, 2.5, 0.5);
  CHECK(iv.lo == Catch::Approx(std::sqrt(8.0) * 0.25 / 4.0));
  CHECK(iv.hi == Catch::Approx(std::sqrt(8.0) * 0.7 / 4.0));
  CHECK_THROWS_AS(admissible_delta_interval(0.7, 0.25, 4.0, 2.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(admissible_delta_interval(0.25, 1.0, 4.0, 2.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(admissible_delta_interval(0.25, 0.7, 2.0, 2.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(admissible_delta_interval(0.25, 0.7, 4.0, 2.5, 3.0), std::invalid_argument);
}
