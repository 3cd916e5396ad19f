#include <catch2/catch_amalgamated.hpp>

#include "uclab/field.hpp"
#include "uclab/media.hpp"
#include "uclab/norms.hpp"
#include "uclab/rng.hpp"

using namespace uclab;

static const Box kSquare(vec2(0, 0), vec2(1, 1), 2);

TEST_CASE("ellipticity check on catalog media") {
  auto id = medium_identity(2);
  auto rep = verify_ellipticity(id, kSquare, 200);
  CHECK(rep.passed());
  CHECK(rep.worst_margin() == Catch::Approx(0.0).margin(1e-14));

  auto diag = medium_diagonal(2, 2.0, 0.5);
  CHECK(verify_ellipticity(diag, kSquare, 200).passed());
  auto tight = diag;
  tight.kappa = 1.9;
  CHECK_FALSE(verify_ellipticity(tight, kSquare, 200).passed());

  AnisotropicMedium indef;
  indef.dim = 2;
  indef.kappa = 3.0;
  indef.eval = [](const Vec&) {
    SymMat m;
    m.a[0][0] = 1.0;
    m.a[0][1] = m.a[1][0] = 2.0;
    m.a[1][1] = 1.0;
    return m;
  };
  auto bad = verify_ellipticity(indef, kSquare, 400);
  CHECK_FALSE(bad.passed());
  CHECK(bad.margins[0] < 0.0); // lower bound fails: eigenvalue -1
}

TEST_CASE("gradient bound check, analytic and finite-difference paths") {
  auto cm = medium_diagonal(2, 2.0, 0.5, 0.25);
  CHECK(verify_gradient_bound(cm, kSquare, 100).passed()); // constant A: left side 0

  auto sin05 = medium_sinusoidal(2, 0.5);
  CHECK(sin05.varkappa == Catch::Approx(0.5));
  CHECK(verify_gradient_bound(sin05, kSquare, 300).passed());
  auto toosmall = sin05;
  toosmall.varkappa = 0.4;
  CHECK_FALSE(verify_gradient_bound(toosmall, kSquare, 300).passed());

  // finite-difference derivative path reproduces the analytic one
  auto fd = sin05;
  fd.deriv = nullptr;
  QuasiRandom qr;
  double pt[3];
  double worst = 0.0;
  double step = 1e-5 * diameter(kSquare);
  for (int s = 0; s < 50; ++s) {
    qr.point(3, pt);
    Vec x = vec2(0.1 + 0.8 * pt[0], 0.1 + 0.8 * pt[1]);
    for (int k = 0; k < 2; ++k) {
      SymMat a = sin05.deriv_at(x, k, step), b = fd.deriv_at(x, k, step);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(a.a[i][j] - b.a[i][j]));
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("coefficient scaling A_rho") {
  auto id = medium_identity(2);

  SECTION("identity medium, rho = 2 gives diag(1, 1/4)") {
    auto sm = scale_coefficients(id, 2.0);
    SymMat A = sm.scaled.at(vec2(0.3, 0.4));
    CHECK(A.a[0][0] == Catch::Approx(1.0));
    CHECK(A.a[1][1] == Catch::Approx(0.25));
    CHECK(A.a[0][1] == Catch::Approx(0.0).margin(1e-15));
  }
  SECTION("rho = 1 is the identity scaling") {
    auto sm = scale_coefficients(id, 1.0);
    SymMat A = sm.scaled.at(vec2(0.3, 0.4));
    CHECK(A.a[0][0] == Catch::Approx(1.0));
    CHECK(A.a[1][1] == Catch::Approx(1.0));
  }
  SECTION("quadratic-form identity for a random symmetric medium") {
    auto med = medium_random_smooth(2, 99u, 0.3);
    double rho = 0.5;
    auto sm = scale_coefficients(med, rho);
    CounterRng rng(7u);
    for (int s = 0; s < 100; ++s) {
      Vec x = vec2(rng.uniform(0, 1), rng.uniform(-1, 1));
      Vec xi = vec2(rng.uniform(-1, 1), rng.uniform(-1, 1));
      double lhs = sm.scaled.at(x).quad(xi, 2);
      Vec y = vec2(x[0], rho * x[1]);
      Vec eta = vec2(xi[0], xi[1] / rho);
      double rhs = med.at(y).quad(eta, 2);
      CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("scaled medium satisfies the el4/el5 interval bounds") {
  // over rho in [1/2, 2]: lower kappa^-1 min(1, rho_hi^-2), upper kappa max(1, rho_lo^-2)
  double rho_lo = 0.5, rho_hi = 2.0;
  auto med = medium_sinusoidal(2, 0.2);
  QuasiRandom qr;
  double pt[3];
  for (double rho : {0.5, 1.0, 2.0}) {
    auto sm = scale_coefficients(med, rho);
    double lower_c = std::min(1.0, 1.0 / (rho_hi * rho_hi)) / med.kappa;
    double upper_c = med.kappa * std::max(1.0, 1.0 / (rho_lo * rho_lo));
    double grad_c = med.varkappa * std::max(1.0, 1.0 / (rho_lo * rho_lo));
    double step = 1e-5;
    for (int s = 0; s < 200; ++s) {
      qr.point(3, pt);
      Vec x = vec2(0.05 + 0.9 * pt[0], -0.45 + 0.9 * pt[1]);
      Vec xi = unit_direction(2, pt[2]);
      double q = sm.scaled.at(x).quad(xi, 2);
      CHECK(q >= lower_c - 1e-12);
      CHECK(q <= upper_c + 1e-12);
      double acc = std::abs(sm.scaled.deriv_at(x, 0, step).quad(xi, 2)) +
                   std::abs(sm.scaled.deriv_at(x, 1, step).quad(xi, 2));
      CHECK(acc <= grad_c + 1e-10);
    }
  }
}

TEST_CASE("smallness margin rho_0 = 1 - kappa varkappa d_0") {
  auto id = medium_identity(2, 0.01);
  CHECK(smallness_margin(id, kSquare) == Catch::Approx(1.0 - 0.01 * std::sqrt(2.0)).epsilon(1e-12));

  auto gate = id;
  gate.kappa = 1.0;
  gate.varkappa = 1.0 / std::sqrt(2.0);
  CHECK(smallness_margin(gate, kSquare) == Catch::Approx(0.0).margin(1e-14));

  auto closed = id;
  closed.kappa = 2.0;
  closed.varkappa = 1.0;
  CHECK(smallness_margin(closed, kSquare) < 0.0);
}

TEST_CASE("rescaling norm identities el6-el10") {
  // u on Q_rho = (0,1) x (-rho, rho), v(x', xn) = u(x', rho xn) on Q_1;
  // matched grids map trapezoid sums exactly.
  double rho = GENERATE(0.5, 1.0, 2.0);
  Box omega(0.0, 1.0);

  ModeSum ms;
  SpaceMode sp;
  sp.v = [](const Vec& x) { return cplx(std::sin(M_PI * x[0]) + 0.3 * x[0]); };
  sp.d = [](const Vec& x, int) { return cplx(M_PI * std::cos(M_PI * x[0]) + 0.3); };
  sp.dd = [](const Vec& x, int, int) { return cplx(-M_PI * M_PI * std::sin(M_PI * x[0])); };
  TimeMode tm;
  tm.d = [](double t, int k) {
    // cos(2 t) derivatives
    switch (k) {
      case 0: return cplx(std::cos(2 * t));
      case 1: return cplx(-2 * std::sin(2 * t));
      case 2: return cplx(-4 * std::cos(2 * t));
      default: return cplx(8 * std::sin(2 * t));
    }
  };
  ms.add(sp, tm);
  Analytic ua = ms.build();

  int nx = 65, nt = 129;
  SpaceGrid g(omega, nx);
  TimeAxis axis_rho(-rho, rho, nt), axis_1(-1.0, 1.0, nt);
  auto u = SpaceTimeField::sampled(g, axis_rho, ua, "u");
  // v(x', xn) = u(x', rho xn)
  Analytic va;
  va.value = [ua, rho](const Vec& x, double t) { return ua.value(x, rho * t); };
  va.dx = [ua, rho](const Vec& x, double t, int i) { return ua.dx(x, rho * t, i); };
  va.dt = [ua, rho](const Vec& x, double t, int k) {
    return std::pow(rho, k) * ua.dt(x, rho * t, k);
  };
  auto v = SpaceTimeField::sampled(g, axis_1, va, "v");

  // el6: ||v||_{L2(Q1)} = rho^{-1/2} ||u||_{L2(Q_rho)}
  double lv = bochner_norm(v, 0, SpaceNorm::L2, window_interval(-1, 1), nullptr, nt);
  double lu = bochner_norm(u, 0, SpaceNorm::L2, window_interval(-rho, rho), nullptr, nt);
  CHECK(std::abs(lv - std::pow(rho, -0.5) * lu) <= 1e-10 * std::max(1.0, lu));

  // el7 (inequality, full gradient incl. the time-like axis):
  // ||grad v|| >= rho^{-1/2} min(1, rho) ||grad u||
  auto grad_norm = [&](const SpaceTimeField& f, double s) {
    double a2 = 0.0;
    int m = nt;
    double dt = 2.0 * s / (m - 1);
    for (int i = 0; i < m; ++i) {
      double t = -s + i * dt;
      double w = (i == 0 || i == m - 1) ? 0.5 * dt : dt;
      Slice sl = make_slice(f, t, 0, 1);
      Slice st = make_slice(f, t, 1, 0);
      double gg = 0.0;
      for (int ix = 0; ix < nx; ++ix) {
        double wx = f.grid.trap_weight(ix, 0);
        gg += wx * (std::norm(sl.g[0][ix]) + std::norm(st.v[ix]));
      }
      a2 += w * gg;
    }
    return std::sqrt(a2);
  };
  double gv = grad_norm(v, 1.0), gu = grad_norm(u, rho);
  CHECK(gv >= std::pow(rho, -0.5) * std::min(1.0, rho) * gu - 1e-10 * std::max(1.0, gu));
  // and the matching upper bound direction used by el10
  CHECK(gv <= std::pow(rho, -0.5) * std::max(1.0, rho) * gu + 1e-10 * std::max(1.0, gu));

  // el9: boundary identity on Sigma = {0,1} x (-rho, rho)
  SubBoundary gamma = SubBoundary::whole(omega);
  double bv = bochner_norm(v, 0, SpaceNorm::BdL2, window_interval(-1, 1), &gamma, nt);
  double bu = bochner_norm(u, 0, SpaceNorm::BdL2, window_interval(-rho, rho), &gamma, nt);
  CHECK(std::abs(bv - std::pow(rho, -0.5) * bu) <= 1e-10 * std::max(1.0, bu));
}

TEST_CASE("el8: scaled operator matches the pulled-back operator pointwise") {
  // Q_rho = (0,1) x (-rho, rho) as a 2-D spatial box; v(x', xn) = u(x', rho xn)
  double rho = GENERATE(0.5, 2.0);
  auto med = medium_random_smooth(2, 5u, 0.25);
  auto sm = scale_coefficients(med, rho);
  // u = sin(pi x0) cos(2 x1) + 0.2 x0 x1^2 with full analytic derivatives
  Analytic ua;
  ua.value = [](const Vec& x, double) {
    return cplx(std::sin(M_PI * x[0]) * std::cos(2 * x[1]) + 0.2 * x[0] * x[1] * x[1]);
  };
  ua.dx = [](const Vec& x, double, int i) {
    if (i == 0) return cplx(M_PI * std::cos(M_PI * x[0]) * std::cos(2 * x[1]) + 0.2 * x[1] * x[1]);
    return cplx(-2.0 * std::sin(M_PI * x[0]) * std::sin(2 * x[1]) + 0.4 * x[0] * x[1]);
  };
  ua.dxx = [](const Vec& x, double, int i, int j) {
    if (i == 0 && j == 0) return cplx(-M_PI * M_PI * std::sin(M_PI * x[0]) * std::cos(2 * x[1]));
    if (i == 1 && j == 1) return cplx(-4.0 * std::sin(M_PI * x[0]) * std::cos(2 * x[1]) + 0.4 * x[0]);
    return cplx(-2.0 * M_PI * std::cos(M_PI * x[0]) * std::sin(2 * x[1]) + 0.4 * x[1]);
  };
  Analytic va;
  va.value = [ua, rho](const Vec& x, double t) { return ua.value(vec2(x[0], rho * x[1]), t); };
  va.dx = [ua, rho](const Vec& x, double t, int i) {
    double s = i == 1 ? rho : 1.0;
    return s * ua.dx(vec2(x[0], rho * x[1]), t, i);
  };
  va.dxx = [ua, rho](const Vec& x, double t, int i, int j) {
    double s = (i == 1 ? rho : 1.0) * (j == 1 ? rho : 1.0);
    return s * ua.dxx(vec2(x[0], rho * x[1]), t, i, j);
  };
  double step = 1e-6;
  auto Lu = [&](const Vec& y) {
    cplx val = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) val += med.at(y).a[i][j] * ua.dxx(y, 0.0, i, j);
    for (int j = 0; j < 2; ++j) {
      double divA_j = med.deriv_at(y, 0, step).a[0][j] + med.deriv_at(y, 1, step).a[1][j];
      val += divA_j * ua.dx(y, 0.0, j);
    }
    return val;
  };
  auto Lrv = [&](const Vec& x) {
    cplx val = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) val += sm.scaled.at(x).a[i][j] * va.dxx(x, 0.0, i, j);
    for (int j = 0; j < 2; ++j) {
      double divA_j = sm.scaled.deriv_at(x, 0, step).a[0][j] + sm.scaled.deriv_at(x, 1, step).a[1][j];
      val += divA_j * va.dx(x, 0.0, j);
    }
    return val;
  };
  CounterRng rng(3u);
  for (int s = 0; s < 60; ++s) {
    Vec x = vec2(rng.uniform(0, 1), rng.uniform(-1, 1));
    cplx lhs = Lrv(x);
    cplx rhs = Lu(vec2(x[0], rho * x[1]));
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}
