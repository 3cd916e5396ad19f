#include <catch2/catch_amalgamated.hpp>

#include "uclab/geometry.hpp"
#include "uclab/rng.hpp"

using namespace uclab;

TEST_CASE("diameter of boxes") {
  Box sq(vec2(0, 0), vec2(1, 1), 2);
  CHECK(diameter(sq) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
  Box rect(vec2(0, 0), vec2(2, 1), 2);
  CHECK(diameter(rect) == Catch::Approx(std::sqrt(5.0)).epsilon(1e-14));
  Box seg(0.0, 1.0);
  CHECK(diameter(seg) == Catch::Approx(1.0));
}

TEST_CASE("depth of boxes") {
  CHECK(depth(Box(vec2(0, 0), vec2(1, 1), 2)) == Catch::Approx(0.5));
  CHECK(depth(Box(vec2(0, 0), vec2(2, 1), 2)) == Catch::Approx(0.5));
  CHECK(depth(Box(0.0, 3.0)) == Catch::Approx(1.5));
}

TEST_CASE("depth and diameter match a brute-force sampler") {
  Box rect(vec2(0, 0), vec2(2, 1), 2);
  // brute force over a coarse grid of point pairs
  int m = 24;
  double diam = 0.0, dep = 0.0;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      Vec p = vec2(2.0 * i / m, 1.0 * j / m);
      dep = std::max(dep, rect.dist_to_boundary(p));
      for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= m; ++b)
          diam = std::max(diam, dist(p, vec2(2.0 * a / m, 1.0 * b / m), 2));
    }
  CHECK(diameter(rect) >= diam - 1e-12);
  CHECK(diameter(rect) <= diam + 3.0 / m);
  CHECK(depth(rect) >= dep - 1e-12);
  CHECK(depth(rect) <= dep + 2.0 / m);
}

TEST_CASE("depth from sub-boundary") {
  Box sq(vec2(0, 0), vec2(1, 1), 2);
  auto whole = SubBoundary::whole(sq);
  CHECK(depth_from_subboundary(sq, whole, 128) == Catch::Approx(0.5).margin(0.01));

  SubBoundary left;
  left.faces.push_back(BoundaryFace{0, 0, 0.0, 1.0});
  double d = depth_from_subboundary(sq, left, 256);
  CHECK(d == Catch::Approx(1.0).margin(0.01));
  CHECK(d <= 1.0); // converges from below

  Box seg(0.0, 1.0);
  SubBoundary leftpt;
  leftpt.faces.push_back(BoundaryFace{0, 0, 0.0, 0.0});
  CHECK(depth_from_subboundary(seg, leftpt, 512) == Catch::Approx(1.0).margin(0.01));

  SubBoundary empty;
  CHECK_THROWS_AS(depth_from_subboundary(sq, empty), std::invalid_argument);
}

TEST_CASE("boundary ball chain, theta = pi/6 reference values") {
  Box big(vec2(-10, -10), vec2(10, 10), 2);
  double theta = M_PI / 6.0;
  auto chain = boundary_ball_chain(vec2(0, 0), theta, 1.0, vec2(0, 1), 6, big);
  CHECK(chain.mu == Catch::Approx(0.8).epsilon(1e-14));
  CHECK(chain.varpi_chain == Catch::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(chain.deltas[0] == Catch::Approx(0.5));
  CHECK(chain.balls[0].radius == Catch::Approx(1.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("chain inclusion margin vanishes identically") {
  // identity 1 - mu = (2 - mu) sin(theta)/3 makes
  // |x_{k+1}-x_k| + rho_{k+1} = 2 rho_k exact
  Box big(vec2(-40, -40), vec2(40, 40), 2);
  CounterRng rng(20240811u);
  for (int trial = 0; trial < 100; ++trial) {
    double theta = rng.uniform(0.01, M_PI / 2 - 0.01);
    double mu = (3.0 - 2.0 * std::sin(theta)) / (3.0 - std::sin(theta));
    double lhs = 1.0 - mu;
    double rhs = (2.0 - mu) * std::sin(theta) / 3.0;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));

    auto chain = boundary_ball_chain(vec2(0, 0), theta, 1.0, vec2(0, 1), 8, big);
    for (size_t k = 0; k + 1 < chain.balls.size(); ++k) {
      double step = dist(chain.balls[k].center, chain.balls[k + 1].center, 2);
      double margin = 2.0 * chain.balls[k].radius - (step + chain.balls[k + 1].radius);
      CHECK(std::abs(margin) <= 1e-12 * chain.balls[k].radius);
    }
  }
}

TEST_CASE("chain radii follow the exact geometric law") {
  Box big(vec2(-10, -10), vec2(10, 10), 2);
  double theta = 0.7;
  auto c = boundary_ball_chain(vec2(0, 0), theta, 1.5, vec2(0, 1), 10, big);
  double d0 = c.deltas[0];
  for (size_t k = 0; k < c.balls.size(); ++k) {
    CHECK(c.deltas[k] == Catch::Approx(std::pow(c.mu, k) * d0).epsilon(1e-13));
    CHECK(c.balls[k].radius == Catch::Approx(c.varpi_chain * std::pow(c.mu, k) * d0).epsilon(1e-13));
  }
  // every tripled ball stays inside the cone: |x_k - apex| + 3 rho_k <= R and
  // tangency radius delta_k sin(theta) equals 3 rho_k
  for (size_t k = 0; k < c.balls.size(); ++k) {
    CHECK(c.deltas[k] + 3.0 * c.balls[k].radius <= c.cone_height + 1e-12);
    CHECK(3.0 * c.balls[k].radius == Catch::Approx(c.deltas[k] * std::sin(theta)).epsilon(1e-12));
  }
}

TEST_CASE("single-ball chain and error cases") {
  Box big(vec2(-10, -10), vec2(10, 10), 2);
  auto c = boundary_ball_chain(vec2(0, 0), 0.5, 1.0, vec2(0, 1), 1, big);
  CHECK(c.balls.size() == 1);
  CHECK_THROWS_AS(boundary_ball_chain(vec2(0, 0), 1.7, 1.0, vec2(0, 1), 3, big),
                  std::invalid_argument);
  Box tight(vec2(-0.1, -0.1), vec2(0.1, 0.1), 2);
  CHECK_THROWS_AS(boundary_ball_chain(vec2(0, 0), 0.5, 1.0, vec2(0, 1), 3, tight),
                  std::runtime_error);
}

TEST_CASE("interior ball chain") {
  Box sq(vec2(0, 0), vec2(1, 1), 2);

  SECTION("trivial chain") {
    auto c = interior_ball_chain(vec2(0.5, 0.5), vec2(0.5, 0.5), 0.05, sq);
    CHECK(c.balls.size() == 1);
  }
  SECTION("clearance fails at equality for r = 0.1") {
    CHECK_THROWS_AS(interior_ball_chain(vec2(0.3, 0.5), vec2(0.7, 0.5), 0.1, sq),
                    std::runtime_error);
  }
  SECTION("r = 0.06 gives N = 7 with strict clearance") {
    auto c = interior_ball_chain(vec2(0.3, 0.5), vec2(0.7, 0.5), 0.06, sq);
    CHECK(c.balls.size() == 8); // N = 7 steps
    CHECK(dist(c.balls.back().center, vec2(0.7, 0.5), 2) <= 1e-14);
    for (size_t j = 0; j + 1 < c.balls.size(); ++j) {
      double step = dist(c.balls[j].center, c.balls[j + 1].center, 2);
      CHECK(step + c.balls[j].radius <= 2.0 * c.balls[j].radius + 1e-12);
    }
  }
}
