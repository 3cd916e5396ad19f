#include <catch2/catch_amalgamated.hpp>

#include "uclab/families.hpp"
#include "uclab/norms.hpp"
#include "uclab/rng.hpp"

using namespace uclab;

namespace {

// f(x) independent of t, on [0,1] with a trivial time axis
SpaceTimeField spatial_field_1d(std::function<cplx(double)> f, std::function<cplx(double)> df,
                                std::function<cplx(double)> ddf, int nx) {
  Analytic a;
  a.value = [f](const Vec& x, double) { return f(x[0]); };
  a.dx = [df](const Vec& x, double, int) { return df(x[0]); };
  a.dxx = [ddf](const Vec& x, double, int, int) { return ddf(x[0]); };
  a.dt = [](const Vec&, double, int) { return cplx(0.0); };
  a.dxdt = [](const Vec&, double, int, int) { return cplx(0.0); };
  a.dxxdt = [](const Vec&, double, int, int, int) { return cplx(0.0); };
  SpaceGrid g(Box(0.0, 1.0), nx);
  return SpaceTimeField::sampled(g, TimeAxis(0.0, 1.0, 2), a);
}

} // namespace

TEST_CASE("Hoelder seminorm on model functions") {
  SECTION("linear function, alpha = 1") {
    auto f = spatial_field_1d([](double x) { return cplx(x); }, [](double) { return cplx(1.0); },
                              [](double) { return cplx(0.0); }, 129);
    CHECK(holder_seminorm(f, 1.0) == Catch::Approx(1.0).epsilon(1e-12));
  }
  SECTION("x^2, alpha = 1: sup |x+y| = 2 - O(h)") {
    auto f = spatial_field_1d([](double x) { return cplx(x * x); },
                              [](double x) { return cplx(2 * x); }, [](double) { return cplx(2.0); },
                              257);
    double s = holder_seminorm(f, 1.0);
    CHECK(s <= 2.0 + 1e-12);
    CHECK(s >= 2.0 - 2.0 / 256);
  }
  SECTION("sqrt(x), alpha = 1/2: attained at y = 0") {
    auto f = spatial_field_1d([](double x) { return cplx(std::sqrt(x)); },
                              [](double x) { return cplx(0.5 / std::sqrt(std::max(x, 1e-12))); },
                              [](double) { return cplx(0.0); }, 257);
    // brute-force oracle over the same grid
    double oracle = 0.0;
    for (int i = 0; i <= 64; ++i)
      for (int j = i + 1; j <= 64; ++j) {
        double x = i / 64.0, y = j / 64.0;
        oracle = std::max(oracle, std::abs(std::sqrt(x) - std::sqrt(y)) / std::sqrt(y - x));
      }
    CHECK(oracle <= 1.0 + 1e-12);
    CHECK(holder_seminorm(f, 0.5) == Catch::Approx(1.0).epsilon(1e-6));
  }
  SECTION("monotone under nested refinement") {
    auto f1 = spatial_field_1d([](double x) { return cplx(std::sin(3 * x)); },
                               [](double x) { return cplx(3 * std::cos(3 * x)); },
                               [](double x) { return cplx(-9 * std::sin(3 * x)); }, 33);
    auto f2 = spatial_field_1d([](double x) { return cplx(std::sin(3 * x)); },
                               [](double x) { return cplx(3 * std::cos(3 * x)); },
                               [](double x) { return cplx(-9 * std::sin(3 * x)); }, 65);
    CHECK(holder_seminorm(f2, 0.7) >= holder_seminorm(f1, 0.7) - 1e-14);
  }
}

TEST_CASE("grid Sobolev norms") {
  SECTION("sin(pi x): L2 = 1/sqrt(2)") {
    auto f = spatial_field_1d([](double x) { return cplx(std::sin(M_PI * x)); },
                              [](double x) { return cplx(M_PI * std::cos(M_PI * x)); },
                              [](double x) { return cplx(-M_PI * M_PI * std::sin(M_PI * x)); }, 513);
    CHECK(grid_sobolev_norm(f, 0.0, SpaceNorm::L2) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-6));
  }
  SECTION("constant: L2 = c sqrt(|Omega|)") {
    auto f = spatial_field_1d([](double) { return cplx(3.25); }, [](double) { return cplx(0.0); },
                              [](double) { return cplx(0.0); }, 65);
    CHECK(grid_sobolev_norm(f, 0.0, SpaceNorm::L2) == Catch::Approx(3.25).epsilon(1e-12));
  }
  SECTION("sin(pi x) sin(pi y): H1^2 = 1/4 + pi^2/2") {
    Analytic a;
    a.value = [](const Vec& x, double) { return cplx(std::sin(M_PI * x[0]) * std::sin(M_PI * x[1])); };
    a.dx = [](const Vec& x, double, int i) {
      return i == 0 ? cplx(M_PI * std::cos(M_PI * x[0]) * std::sin(M_PI * x[1]))
                    : cplx(M_PI * std::sin(M_PI * x[0]) * std::cos(M_PI * x[1]));
    };
    SpaceGrid g(Box(vec2(0, 0), vec2(1, 1), 2), 257);
    auto f = SpaceTimeField::sampled(g, TimeAxis(0, 1, 2), a);
    double h1 = grid_sobolev_norm(f, 0.0, SpaceNorm::H1);
    CHECK(h1 * h1 == Catch::Approx(0.25 + M_PI * M_PI / 2.0).margin(1e-5));
  }
}

TEST_CASE("Bochner norms") {
  // separable u = sin(pi x) cos(2t) on (0,1) x (-2,2)
  ModeSum ms;
  SpaceMode sp;
  sp.v = [](const Vec& x) { return cplx(std::sin(M_PI * x[0])); };
  sp.d = [](const Vec& x, int) { return cplx(M_PI * std::cos(M_PI * x[0])); };
  sp.dd = [](const Vec& x, int, int) { return cplx(-M_PI * M_PI * std::sin(M_PI * x[0])); };
  TimeMode tm;
  tm.d = [](double t, int k) {
    switch (k) {
      case 0: return cplx(std::cos(2 * t));
      case 1: return cplx(-2 * std::sin(2 * t));
      case 2: return cplx(-4 * std::cos(2 * t));
      default: return cplx(8 * std::sin(2 * t));
    }
  };
  ms.add(sp, tm);
  SpaceGrid g(Box(0.0, 1.0), 129);
  auto u = SpaceTimeField::sampled(g, TimeAxis(-2, 2, 129), ms.build(), "sep");

  SECTION("k = 0 reduces to L2-in-time of the space norm") {
    double v = bochner_norm(u, 0, SpaceNorm::L2, window_full(2.0), nullptr, 4097);
    // int sin^2(pi x) = 1/2; int_{-2}^{2} cos^2(2t) dt = 2 + sin(8)/4
    double tint = 2.0 + std::sin(8.0) / 4.0;
    CHECK(v * v == Catch::Approx(0.5 * tint).epsilon(1e-6));
  }
  SECTION("separable norm factorizes against 1-D computations") {
    double v = bochner_norm(u, 0, SpaceNorm::L2, window_full(2.0), nullptr, 513);
    // 1-D factors with the same trapezoid resolution
    double sx = 0.0;
    for (int i = 0; i < 129; ++i) {
      double x = i / 128.0, w = (i == 0 || i == 128) ? 0.5 / 128 : 1.0 / 128;
      sx += w * std::sin(M_PI * x) * std::sin(M_PI * x);
    }
    double st = 0.0;
    for (int i = 0; i < 513; ++i) {
      double t = -2.0 + 4.0 * i / 512.0, w = (i == 0 || i == 512) ? 0.5 * 4 / 512 : 4.0 / 512;
      st += w * std::cos(2 * t) * std::cos(2 * t);
    }
    CHECK(v * v == Catch::Approx(sx * st).epsilon(1e-8));
  }
  SECTION("window J_{delta/2} sums two disjoint bands") {
    double delta = 0.5, T = 2.0;
    auto J = window_J(delta / 2, T);
    REQUIRE(J.size() == 2);
    double whole = bochner_norm(u, 0, SpaceNorm::L2, J);
    double left = bochner_norm(u, 0, SpaceNorm::L2, {J[0]});
    double right = bochner_norm(u, 0, SpaceNorm::L2, {J[1]});
    CHECK(whole * whole == Catch::Approx(left * left + right * right).epsilon(1e-12));
  }
  SECTION("H1-in-time dominates the k = 0 norm") {
    double v0 = bochner_norm(u, 0, SpaceNorm::L2, window_full(2.0));
    double v1 = bochner_norm(u, 1, SpaceNorm::L2, window_full(2.0));
    CHECK(v1 >= v0);
  }
  SECTION("homogeneous scaling") {
    CounterRng rng(12u);
    double c = rng.uniform(-4.0, 4.0);
    SpaceTimeField cu = u;
    for (auto& z : cu.values) z *= c;
    cu.analytic = Analytic{}; // force the sampled path
    double a = bochner_norm(cu, 0, SpaceNorm::L2, window_full(2.0));
    double b = bochner_norm(u, 0, SpaceNorm::L2, window_full(2.0), nullptr, 129);
    CHECK(a == Catch::Approx(std::abs(c) * b).epsilon(1e-12));
  }
}

TEST_CASE("window outside the grid is rejected") {
  auto f = spatial_field_1d([](double x) { return cplx(x); }, [](double) { return cplx(1.0); },
                            [](double) { return cplx(0.0); }, 33);
  CHECK_THROWS_AS(bochner_norm(f, 0, SpaceNorm::L2, window_interval(0.0, 2.0)),
                  std::invalid_argument);
}

TEST_CASE("boundary norms in 1-D use the counting measure") {
  auto f = spatial_field_1d([](double x) { return cplx(1.0 + x); }, [](double) { return cplx(1.0); },
                            [](double) { return cplx(0.0); }, 33);
  Slice sl = make_slice(f, 0.0, 0, 1);
  SubBoundary whole = SubBoundary::whole(f.grid.box);
  double b = slice_space_norm(f.grid, sl, SpaceNorm::BdL2, &whole);
  CHECK(b == Catch::Approx(std::sqrt(1.0 + 4.0)).epsilon(1e-12));
  // normal derivative: du/dnu = -1 at x=0, +1 at x=1
  double nd = slice_space_norm(f.grid, sl, SpaceNorm::BdNormalDerivL2, &whole);
  CHECK(nd == Catch::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("surrogate boundary norms interpolate between orders") {
  Analytic a;
  a.value = [](const Vec& x, double) { return cplx(std::sin(2 * x[0]) + x[1]); };
  a.dx = [](const Vec& x, double, int i) {
    return i == 0 ? cplx(2 * std::cos(2 * x[0])) : cplx(1.0);
  };
  a.dxx = [](const Vec& x, double, int i, int j) {
    return (i == 0 && j == 0) ? cplx(-4 * std::sin(2 * x[0])) : cplx(0.0);
  };
  SpaceGrid g(Box(vec2(0, 0), vec2(1, 1), 2), 65);
  auto f = SpaceTimeField::sampled(g, TimeAxis(0, 1, 2), a);
  Slice sl = make_slice(f, 0.0, 0, 2);
  double l2 = slice_space_norm(g, sl, SpaceNorm::BdL2);
  double h1 = slice_space_norm(g, sl, SpaceNorm::BdH1);
  double h2 = slice_space_norm(g, sl, SpaceNorm::BdH2);
  double s12 = slice_space_norm(g, sl, SpaceNorm::BdH12Surr);
  double s32 = slice_space_norm(g, sl, SpaceNorm::BdH32Surr);
  CHECK(s12 == Catch::Approx(std::sqrt(l2 * h1)).epsilon(1e-12));
  CHECK(s32 == Catch::Approx(std::sqrt(h1 * h2)).epsilon(1e-12));
  CHECK(l2 <= s12);
  CHECK(s12 <= h1);
  CHECK(h1 <= s32);
  CHECK(s32 <= h2);
}

TEST_CASE("norm report carries consistent named values") {
  ModeSum ms;
  ms.add(trig_space_mode(M_PI, 0.0, 0.0, 0.0, 1), cos_time_mode(1.0));
  SpaceGrid g(Box(0.0, 1.0), 33);
  auto f = SpaceTimeField::sampled(g, TimeAxis(-1, 1, 17), ms.build(), "report-field");
  auto r = compute_norm_report(f, 0.5);
  CHECK(r.label == "report-field");
  CHECK(r.l2 > 0.0);
  CHECK(r.h1 >= r.l2);                 // H1 dominates L2
  CHECK(r.bochner_h1_l2 >= r.l2);      // H1-in-time dominates the k = 0 norm
  CHECK(r.c1alpha >= r.c0alpha);
  CHECK(r.bd_h12_surr >= 0.0);
  CHECK(r.bd_h32_surr >= r.bd_h12_surr);
  CHECK(r.nx == 33);
  CHECK(r.nt == 17);
}
