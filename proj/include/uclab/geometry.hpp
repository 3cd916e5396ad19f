#ifndef UCLAB_GEOMETRY_HPP
#define UCLAB_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace uclab {

// Spatial points carry two slots; dimension (1 or 2) comes from the host Box.
using Vec = std::array<double, 2>;

inline Vec vec1(double x) { return {x, 0.0}; }
inline Vec vec2(double x, double y) { return {x, y}; }

inline double dot(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a, int dim) { return std::sqrt(dot(a, a, dim)); }

inline Vec axpy(double alpha, const Vec& x, const Vec& y, int dim) {
  Vec r{0.0, 0.0};
  for (int i = 0; i < dim; ++i) r[i] = alpha * x[i] + y[i];
  return r;
}

inline double dist(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Axis-aligned box, dimension 1 or 2. All domains at desk scale are boxes,
// so geodesic distances collapse to Euclidean ones.
struct Box {
  Vec lo{0.0, 0.0};
  Vec hi{1.0, 1.0};
  int dim = 2;

  Box() = default;
  Box(double a, double b) : lo(vec1(a)), hi(vec1(b)), dim(1) { validate(); }
  Box(Vec l, Vec h, int d) : lo(l), hi(h), dim(d) { validate(); }

  void validate() const {
    if (dim < 1 || dim > 2) throw std::invalid_argument("Box: dim must be 1 or 2");
    for (int i = 0; i < dim; ++i)
      if (!(hi[i] > lo[i])) throw std::invalid_argument("Box: upper <= lower");
  }

  double side(int axis) const { return hi[axis] - lo[axis]; }
  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= side(i);
    return v;
  }
  bool contains(const Vec& p, double tol = 0.0) const {
    for (int i = 0; i < dim; ++i)
      if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
    return true;
  }
  double dist_to_boundary(const Vec& p) const {
    double d = std::numeric_limits<double>::max();
    for (int i = 0; i < dim; ++i) d = std::min({d, p[i] - lo[i], hi[i] - p[i]});
    return d;
  }
  Vec center() const {
    Vec c{0.0, 0.0};
    for (int i = 0; i < dim; ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }
};

struct Ball {
  Vec center{0.0, 0.0};
  double radius = 1.0;
  Ball() = default;
  Ball(Vec c, double r) : center(c), radius(r) {
    if (!(r > 0.0)) throw std::invalid_argument("Ball: radius must be positive");
  }
};

// Corner diagonal; the box is convex so this is the max distance between points.
inline double diameter(const Box& box) { return dist(box.lo, box.hi, box.dim); }

// sup over interior points of distance to the boundary = half the min side.
inline double depth(const Box& box) {
  double m = box.side(0);
  for (int i = 1; i < box.dim; ++i) m = std::min(m, box.side(i));
  return 0.5 * m;
}

// A face subset of the boundary: `axis` is the normal direction, `side` picks
// the lower (0) or upper (1) face, [t_lo, t_hi] restricts the tangential
// coordinate (ignored in 1-D where a face is a point).
struct BoundaryFace {
  int axis = 0;
  int side = 0;
  double t_lo = 0.0;
  double t_hi = 1.0;
};

struct SubBoundary {
  std::vector<BoundaryFace> faces;

  static SubBoundary whole(const Box& box) {
    SubBoundary g;
    for (int axis = 0; axis < box.dim; ++axis)
      for (int side = 0; side < 2; ++side) {
        BoundaryFace f;
        f.axis = axis;
        f.side = side;
        if (box.dim == 2) {
          int tang = 1 - axis;
          f.t_lo = box.lo[tang];
          f.t_hi = box.hi[tang];
        }
        g.faces.push_back(f);
      }
    return g;
  }
};

// Exact distance from a point to one axis-aligned face patch.
inline double dist_to_face(const Box& box, const BoundaryFace& f, const Vec& p) {
  double plane = f.side == 0 ? box.lo[f.axis] : box.hi[f.axis];
  double dn = p[f.axis] - plane;
  if (box.dim == 1) return std::abs(dn);
  int tang = 1 - f.axis;
  double tt = std::clamp(p[tang], f.t_lo, f.t_hi);
  double dt = p[tang] - tt;
  return std::sqrt(dn * dn + dt * dt);
}

// sup_y inf_{x in gamma} |x - y| over a deterministic interior sample grid.
// Lower bound of the continuum value; converges from below under refinement.
inline double depth_from_subboundary(const Box& box, const SubBoundary& gamma,
                                     int samples_per_axis = 64) {
  if (gamma.faces.empty()) throw std::invalid_argument("depth_from_subboundary: empty gamma");
  double best = 0.0;
  int m = samples_per_axis;
  auto coord = [&](int axis, int i) {
    return box.lo[axis] + (i + 0.5) / m * box.side(axis);
  };
  int my = box.dim == 2 ? m : 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < my; ++j) {
      Vec p = box.dim == 2 ? vec2(coord(0, i), coord(1, j)) : vec1(coord(0, i));
      double d = std::numeric_limits<double>::max();
      for (const auto& f : gamma.faces) d = std::min(d, dist_to_face(box, f, p));
      best = std::max(best, d);
    }
  return best;
}

enum class ChainKind { BoundaryCone, Interior };

struct BallChain {
  ChainKind kind = ChainKind::Interior;
  std::vector<Ball> balls;
  // cone parameters (boundary kind only)
  double theta = 0.0;
  double cone_height = 0.0;
  Vec axis{0.0, 0.0};
  double mu = 0.0;          // contraction factor (3-2sin)/(3-sin)
  double varpi_chain = 0.0; // radius/apex-distance ratio sin(theta)/3
  std::vector<double> deltas; // |x_k - apex| for boundary chains
};

// Chain of shrinking balls inside the cone C(x_tilde) with apex x_tilde,
// axis xi, half-aperture theta, height R. Construction follows
//   x0 = x~ + (R/2) xi, delta0 = R/2, rho0 = (sin(theta)/3) delta0,
//   x_{k+1} = x_k - (1-mu) delta_k xi,  delta_{k+1} = mu delta_k,
//   rho_{k+1} = mu rho_k,  mu = (3-2sin)/(3-sin),
// which gives B(x_{k+1}, rho_{k+1}) subset B(x_k, 2 rho_k) with exact
// equality of the inclusion margin, and B(x_k, 3 rho_k) inside the cone.
inline BallChain boundary_ball_chain(const Vec& x_tilde, double theta, double R,
                                     const Vec& xi, int k_max, const Box& domain) {
  if (!(theta > 0.0 && theta < M_PI / 2))
    throw std::invalid_argument("boundary_ball_chain: theta out of (0, pi/2)");
  if (k_max < 1) throw std::invalid_argument("boundary_ball_chain: k_max >= 1 required");
  int dim = domain.dim;
  double xin = norm2(xi, dim);
  if (std::abs(xin - 1.0) > 1e-12)
    throw std::invalid_argument("boundary_ball_chain: xi must be a unit vector");

  // cone containment probe: deterministic fan of points through the cone
  const int nr = 16, na = 9;
  for (int ir = 1; ir <= nr; ++ir) {
    double s = R * ir / nr;
    for (int ia = 0; ia < na; ++ia) {
      double phi = theta * (2.0 * ia / (na - 1) - 1.0);
      Vec dir = xi;
      if (dim == 2) {
        double c = std::cos(phi), sn = std::sin(phi);
        dir = vec2(c * xi[0] - sn * xi[1], sn * xi[0] + c * xi[1]);
      }
      Vec p = axpy(s, dir, x_tilde, dim);
      if (!domain.contains(p, 1e-12))
        throw std::runtime_error("boundary_ball_chain: cone escapes the domain");
      if (dim == 1) break;
    }
  }

  BallChain chain;
  chain.kind = ChainKind::BoundaryCone;
  chain.theta = theta;
  chain.cone_height = R;
  chain.axis = xi;
  double sin_t = std::sin(theta);
  chain.mu = (3.0 - 2.0 * sin_t) / (3.0 - sin_t);
  chain.varpi_chain = sin_t / 3.0;

  double delta = R / 2.0;
  Vec x = axpy(delta, xi, x_tilde, dim);
  double rho = chain.varpi_chain * delta;
  for (int k = 0; k < k_max; ++k) {
    chain.balls.emplace_back(x, rho);
    chain.deltas.push_back(delta);
    double alpha = (1.0 - chain.mu) * delta;
    x = axpy(-alpha, xi, x, dim);
    delta *= chain.mu;
    rho *= chain.mu;
  }
  return chain;
}

// Equal balls B(x_j, r) along the straight segment from x0 to x_target with
// step <= r (valid in convex boxes); requires clearance B(x_j, 3r) inside.
inline BallChain interior_ball_chain(const Vec& x0, const Vec& x_target, double r,
                                     const Box& domain) {
  if (!(r > 0.0)) throw std::invalid_argument("interior_ball_chain: r must be positive");
  int dim = domain.dim;
  double len = dist(x0, x_target, dim);
  int nsteps = len == 0.0 ? 0 : static_cast<int>(std::ceil(len / r - 1e-12));
  BallChain chain;
  chain.kind = ChainKind::Interior;
  for (int j = 0; j <= nsteps; ++j) {
    double s = nsteps == 0 ? 0.0 : static_cast<double>(j) / nsteps;
    Vec x{0.0, 0.0};
    for (int i = 0; i < dim; ++i) x[i] = (1.0 - s) * x0[i] + s * x_target[i];
    if (domain.dist_to_boundary(x) <= 3.0 * r)
      throw std::runtime_error("interior_ball_chain: clearance violation, B(x_j,3r) not in domain");
    chain.balls.emplace_back(x, r);
  }
  return chain;
}

} // namespace uclab

#endif
