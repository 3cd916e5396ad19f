#include <catch2/catch_amalgamated.hpp>

#include "uclab/cutoff.hpp"

using namespace uclab;

TEST_CASE("cutoff endpoint values are exact") {
  auto p = build_cutoff(0.5, 4.0);
  CHECK(cutoff_value(p, (1.0 - 0.25) * 4.0) == 1.0);
  CHECK(cutoff_value(p, 4.0) == 0.0);
  CHECK(cutoff_value(p, -4.0) == 0.0);
  auto [v0, d0, dd0] = evaluate(p, 0.0);
  CHECK(v0 == 1.0);
  CHECK(d0 == 0.0);
  CHECK(dd0 == 0.0);
  auto [vT, dT, ddT] = evaluate(p, 4.0);
  CHECK(vT == 0.0);
  CHECK(dT == 0.0);
  CHECK(ddT == 0.0);
}

TEST_CASE("certified varpi = max(15/4, 40/sqrt(3))") {
  auto p = build_cutoff(0.3, 2.0);
  CHECK(p.varpi == Catch::Approx(40.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(p.varpi == Catch::Approx(23.0940).epsilon(1e-4));
}

TEST_CASE("band midpoint attains the derivative maximum") {
  double delta = 0.5, T = 4.0;
  auto p = build_cutoff(delta, T);
  double mid = T - 0.5 * p.band();
  auto [v, d1, d2] = evaluate(p, mid);
  CHECK(v == Catch::Approx(0.5).epsilon(1e-13));
  CHECK(std::abs(d1) == Catch::Approx(15.0 / 4.0 / (delta * T)).epsilon(1e-12));
  (void)d2;
}

TEST_CASE("derivative support lies in the closed bands") {
  double delta = 0.5, T = 4.0;
  auto p = build_cutoff(delta, T);
  for (double t = -T; t <= T; t += T / 512) {
    auto [v, d1, d2] = evaluate(p, t);
    (void)v;
    if (std::abs(t) < (1.0 - delta / 2) * T - 1e-12 || std::abs(t) > T) {
      CHECK(d1 == 0.0);
      CHECK(d2 == 0.0);
    }
  }
}

TEST_CASE("derivative bounds hold across a parameter grid") {
  // 20x20 grid of (delta, T); dense sampling in each band
  for (int a = 1; a <= 20; ++a)
    for (int b = 1; b <= 20; ++b) {
      double delta = a / 21.0;
      double T = 0.25 + b * 0.35;
      auto p = build_cutoff(delta, T);
      double w = p.band();
      double worst1 = 0.0, worst2 = 0.0;
      int m = (a * 7 + b) % 3 == 0 ? 10000 : 800; // full density on a subset
      for (int i = 0; i <= m; ++i) {
        double t = p.plateau() + w * i / m;
        auto [v, d1, d2] = evaluate(p, t);
        (void)v;
        worst1 = std::max(worst1, std::abs(d1));
        worst2 = std::max(worst2, std::abs(d2));
      }
      CHECK(worst1 * (delta * T) <= p.varpi + 1e-10);
      CHECK(worst2 * (delta * T) * (delta * T) <= p.varpi + 1e-10);
    }
}

TEST_CASE("profile is C^1 with continuous second derivative at the joins") {
  auto p = build_cutoff(0.4, 3.0);
  double eps = 1e-9;
  for (double t0 : {p.plateau(), p.T}) {
    auto [vl, dl, ddl] = evaluate(p, t0 - eps);
    auto [vr, dr, ddr] = evaluate(p, t0 + eps);
    CHECK(std::abs(vl - vr) <= 1e-7);
    CHECK(std::abs(dl - dr) <= 1e-6);
    CHECK(std::abs(ddl - ddr) <= 1e-5);
  }
}

TEST_CASE("invalid parameters rejected") {
  CHECK_THROWS_AS(build_cutoff(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_cutoff(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_cutoff(0.5, -1.0), std::invalid_argument);
}
