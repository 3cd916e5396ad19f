#include <catch2/catch_amalgamated.hpp>

#include "uclab/families.hpp"
#include "uclab/solvers.hpp"

using namespace uclab;

namespace {
const Box kSquare(vec2(0, 0), vec2(1, 1), 2);
}

TEST_CASE("apply_operator on exact solutions") {
  SECTION("standing wave is wave-annihilated: FD residual is O(h^2)") {
    DiscreteOperator op{medium_identity(2), OperatorKind::Wave};
    std::vector<double> errs;
    for (int n : {17, 33, 65}) {
      SpaceGrid g(kSquare, n);
      TimeAxis ta(0.0, 0.5, n);
      auto u = standing_wave(g, ta, 1, 1);
      u.analytic = Analytic{}; // force the stencil path
      auto pu = apply_operator(op, u);
      double worst = 0.0;
      int kmid = n / 2;
      for (int iy = 1; iy < n - 1; ++iy)
        for (int ix = 1; ix < n - 1; ++ix) worst = std::max(worst, std::abs(pu.at(ix, iy, kmid)));
      errs.push_back(worst);
    }
    double order1 = std::log2(errs[0] / errs[1]);
    double order2 = std::log2(errs[1] / errs[2]);
    CHECK(order1 >= 1.8);
    CHECK(order2 >= 1.8);
  }
  SECTION("linear field, constant coefficients: spatial part vanishes") {
    DiscreteOperator op{medium_diagonal(2, 2.0, 0.5), OperatorKind::Elliptic};
    Analytic a;
    a.value = [](const Vec& x, double) { return cplx(2.0 * x[0] - 3.0 * x[1] + 1.0); };
    a.dt = [](const Vec&, double, int) { return cplx(0.0); };
    SpaceGrid g(kSquare, 17);
    auto u = SpaceTimeField::sampled(g, TimeAxis(0, 1, 4), a);
    u.analytic = Analytic{};
    auto pu = apply_operator(op, u);
    for (const auto& v : pu.values) CHECK(std::abs(v) <= 1e-10);
  }
  SECTION("u = t^2 gives Pu = -2") {
    Analytic a;
    a.value = [](const Vec&, double t) { return cplx(t * t); };
    a.dx = [](const Vec&, double, int) { return cplx(0.0); };
    a.dxx = [](const Vec&, double, int, int) { return cplx(0.0); };
    a.dt = [](const Vec&, double t, int k) {
      if (k == 1) return cplx(2.0 * t);
      if (k == 2) return cplx(2.0);
      return cplx(0.0);
    };
    SpaceGrid g(kSquare, 9);
    auto u = SpaceTimeField::sampled(g, TimeAxis(0, 1, 9), a);
    DiscreteOperator op{medium_identity(2), OperatorKind::Wave};
    auto pu = apply_operator(op, u);
    for (const auto& v : pu.values) CHECK(std::abs(v + 2.0) <= 1e-12);
  }
  SECTION("grid too coarse is rejected") {
    SpaceGrid g(kSquare, 2);
    auto u = SpaceTimeField(g, TimeAxis(0, 1, 4));
    DiscreteOperator op{medium_identity(2), OperatorKind::Wave};
    CHECK_THROWS_AS(apply_operator(op, u), std::invalid_argument);
  }
}

TEST_CASE("wave solver") {
  auto med = medium_identity(2);
  auto zero2 = [](const Vec&, double) { return cplx(0.0); };

  SECTION("zero data gives the zero solution") {
    SpaceGrid g(kSquare, 33);
    int steps = 128;
    TimeAxis ta(0.0, 1.0, steps + 1);
    auto u = wave_solve(med, g, ta, nullptr, [](const Vec&) { return cplx(0.0); },
                        [](const Vec&) { return cplx(0.0); }, zero2);
    for (const auto& v : u.values) CHECK(std::abs(v) == 0.0);
  }
  SECTION("standing-wave convergence at order 2") {
    double omega = std::sqrt(2.0) * M_PI;
    std::vector<double> errs;
    for (int n : {33, 65}) {
      SpaceGrid g(kSquare, n);
      double h = g.h(0);
      double dt_max = h / std::sqrt(2.0);
      int steps = static_cast<int>(std::ceil(1.0 / (0.9 * dt_max)));
      TimeAxis ta(0.0, 1.0, steps + 1);
      auto exact = standing_wave(g, ta, 1, 1);
      auto u = wave_solve(
          med, g, ta, nullptr,
          [&](const Vec& x) { return exact.analytic.value(x, 0.0); },
          [&](const Vec& x) { return exact.analytic.dt(x, 0.0, 1); }, zero2);
      double err2 = 0.0;
      int klast = ta.npts - 1;
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          cplx d = u.at(ix, iy, klast) - exact.analytic.value(g.point(ix, iy), ta.t(klast));
          err2 += g.trap_weight(ix, iy) * std::norm(d);
        }
      errs.push_back(std::sqrt(err2));
    }
    double ratio = errs[0] / errs[1];
    CHECK(ratio >= 3.0); // ~4 expected at 2nd order
    CHECK(ratio <= 5.5);
  }
  SECTION("energy drift under homogeneous data") {
    SpaceGrid g(kSquare, 129);
    double h = g.h(0);
    int steps = static_cast<int>(std::ceil(1.0 / (0.9 * h / std::sqrt(2.0))));
    TimeAxis ta(0.0, 1.0, steps + 1);
    auto exact = standing_wave(g, ta, 2, 1);
    auto u = wave_solve(
        med, g, ta, nullptr, [&](const Vec& x) { return exact.analytic.value(x, 0.0); },
        [&](const Vec& x) { return exact.analytic.dt(x, 0.0, 1); }, zero2);
    double e0 = energy(u, med, ta.t(1));
    double e1 = energy(u, med, ta.t(ta.npts - 2));
    CHECK(std::abs(e1 - e0) / e0 <= 1e-3);
  }
  SECTION("finite speed of propagation, qualitatively") {
    SpaceGrid g(kSquare, 65);
    double h = g.h(0);
    int steps = static_cast<int>(std::ceil(0.25 / (0.9 * h / std::sqrt(2.0))));
    TimeAxis ta(0.0, 0.25, steps + 1);
    RadialBump bump;
    bump.center = vec2(0.5, 0.5);
    bump.r0 = 0.0;
    bump.r1 = 0.15;
    bump.w = 0.075;
    auto ba = bump.analytic();
    auto u = wave_solve(med, g, ta, nullptr,
                        [&](const Vec& x) { return ba.value(x, 0.0); },
                        [](const Vec&) { return cplx(0.0); }, zero2);
    // after t = 0.25 the support may have grown by t plus a few cells; the
    // scheme leaks only dispersive dust beyond that
    double reach = 0.15 + 0.25 + 8 * h;
    int klast = ta.npts - 1;
    for (int iy = 0; iy < 65; ++iy)
      for (int ix = 0; ix < 65; ++ix) {
        Vec x = g.point(ix, iy);
        if (dist(x, bump.center, 2) > reach)
          CHECK(std::abs(u.at(ix, iy, klast)) <= 1e-6);
      }
  }
  SECTION("CFL violation is rejected") {
    SpaceGrid g(kSquare, 33);
    TimeAxis ta(0.0, 1.0, 8);
    CHECK_THROWS_AS(wave_solve(med, g, ta, nullptr, [](const Vec&) { return cplx(0.0); },
                               [](const Vec&) { return cplx(0.0); }, zero2),
                    std::invalid_argument);
  }
}

TEST_CASE("harmonic extension") {
  SpaceGrid g(kSquare, 65);
  TimeAxis ta(0.0, 1.0, 3);

  SECTION("constants extend to constants") {
    auto e = harmonic_extension([](const Vec&, double) { return cplx(1.0); }, g, ta);
    for (const auto& v : e.values) CHECK(std::abs(v - 1.0) <= 1e-11);
  }
  SECTION("harmonic polynomial x^2 - y^2 reproduced at the nodes") {
    auto trace = [](const Vec& x, double) { return cplx(x[0] * x[0] - x[1] * x[1]); };
    auto e = harmonic_extension(trace, g, ta);
    for (int iy = 0; iy < 65; ++iy)
      for (int ix = 0; ix < 65; ++ix) {
        Vec x = g.point(ix, iy);
        CHECK(std::abs(e.at(ix, iy, 0) - cplx(x[0] * x[0] - x[1] * x[1])) <= 1e-10);
      }
  }
  SECTION("linearity") {
    auto t1 = [](const Vec& x, double) { return cplx(std::sin(2 * x[0]) + x[1]); };
    auto t2 = [](const Vec& x, double) { return cplx(std::cos(x[0] - x[1])); };
    cplx a(2.0, 0.0), b(-0.5, 0.0);
    auto e1 = harmonic_extension(t1, g, ta);
    auto e2 = harmonic_extension(t2, g, ta);
    auto ec = harmonic_extension(
        [&](const Vec& x, double t) { return a * t1(x, t) + b * t2(x, t); }, g, ta);
    double worst = 0.0;
    for (size_t i = 0; i < ec.values.size(); ++i)
      worst = std::max(worst, std::abs(ec.values[i] - a * e1.values[i] - b * e2.values[i]));
    CHECK(worst <= 1e-10);
  }
  SECTION("1-D extension is the linear interpolant") {
    SpaceGrid g1(Box(0.0, 2.0), 33);
    auto e = harmonic_extension([](const Vec& x, double) { return cplx(x[0] < 1.0 ? 3.0 : 7.0); },
                                g1, ta);
    CHECK(std::abs(e.at(16, 0, 0) - cplx(5.0)) <= 1e-12);
  }
}

TEST_CASE("energy functional") {
  auto med = medium_identity(2);
  SECTION("zero field has zero energy") {
    SpaceGrid g(kSquare, 17);
    SpaceTimeField u(g, TimeAxis(0, 1, 5));
    u.analytic.value = [](const Vec&, double) { return cplx(0.0); };
    u.analytic.dx = [](const Vec&, double, int) { return cplx(0.0); };
    u.analytic.dt = [](const Vec&, double, int) { return cplx(0.0); };
    CHECK(energy(u, med, 0.5) == 0.0);
  }
  SECTION("sin(pi x) sin(pi y) cos(t): E(t) = (pi^2/2) cos^2 t + (1/4) sin^2 t") {
    SpaceGrid g(kSquare, 257);
    TimeAxis ta(0.0, 2.0, 9);
    ModeSum ms;
    ms.add(trig_space_mode(M_PI, M_PI, 0.0, 0.0, 2), cos_time_mode(1.0));
    auto u = SpaceTimeField::sampled(g, ta, ms.build());
    for (double t : {0.0, 0.7, 1.9}) {
      double expect = M_PI * M_PI / 2.0 * std::cos(t) * std::cos(t) +
                      0.25 * std::sin(t) * std::sin(t);
      CHECK(energy(u, med, t) == Catch::Approx(expect).margin(1e-5));
    }
  }
  SECTION("quadratic scaling") {
    SpaceGrid g(kSquare, 65);
    TimeAxis ta(0.0, 1.0, 5);
    auto u = standing_wave(g, ta, 1, 2);
    double e1 = energy(u, med, 0.3);
    ModeSum ms;
    ms.add(trig_space_mode(M_PI, 2 * M_PI, 0.0, 0.0, 2, 2.5),
           cos_time_mode(std::sqrt(5.0) * M_PI));
    auto cu = SpaceTimeField::sampled(g, ta, ms.build());
    CHECK(energy(cu, med, 0.3) == Catch::Approx(2.5 * 2.5 * e1).epsilon(1e-10));
  }
}

TEST_CASE("energy profile matches pointwise energies") {
  auto med = medium_identity(2);
  SpaceGrid g(kSquare, 33);
  TimeAxis ta(0.0, 1.0, 9);
  auto u = standing_wave(g, ta, 1, 1);
  auto prof = energy_profile(u, med);
  REQUIRE(prof.times.size() == 9);
  for (size_t i = 0; i < prof.times.size(); ++i) {
    CHECK(prof.values[i] == Catch::Approx(energy(u, med, prof.times[i])));
    CHECK(prof.values[i] >= 0.0);
  }
}
