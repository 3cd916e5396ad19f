#ifndef UCLAB_FIELD_HPP
#define UCLAB_FIELD_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "uclab/geometry.hpp"

namespace uclab {

using cplx = std::complex<double>;

// Uniform tensor grid on a Box, endpoints included.
struct SpaceGrid {
  Box box;
  std::array<int, 2> npts{2, 1}; // npts[1] == 1 in 1-D

  SpaceGrid() = default;
  SpaceGrid(const Box& b, int nx, int ny = 0) : box(b) {
    npts[0] = nx;
    npts[1] = b.dim == 2 ? (ny > 0 ? ny : nx) : 1;
    if (npts[0] < 2 || (b.dim == 2 && npts[1] < 2))
      throw std::invalid_argument("SpaceGrid: need >= 2 points per axis");
  }

  int dim() const { return box.dim; }
  double h(int axis) const { return box.side(axis) / (npts[axis] - 1); }
  int size() const { return npts[0] * npts[1]; }
  int index(int ix, int iy) const { return iy * npts[0] + ix; }
  Vec point(int ix, int iy) const {
    Vec p = box.lo;
    p[0] += ix * h(0);
    if (dim() == 2) p[1] += iy * h(1);
    return p;
  }
  double trap_weight(int ix, int iy) const {
    double w = (ix == 0 || ix == npts[0] - 1) ? 0.5 * h(0) : h(0);
    if (dim() == 2) w *= (iy == 0 || iy == npts[1] - 1) ? 0.5 * h(1) : h(1);
    return w;
  }
};

struct TimeAxis {
  double a = 0.0, b = 1.0;
  int npts = 2;

  TimeAxis() = default;
  TimeAxis(double a_, double b_, int n) : a(a_), b(b_), npts(n) {
    if (n < 2 || !(b_ > a_)) throw std::invalid_argument("TimeAxis: invalid interval/resolution");
  }
  double dt() const { return (b - a) / (npts - 1); }
  double t(int k) const { return a + k * dt(); }
  double trap_weight(int k) const { return (k == 0 || k == npts - 1) ? 0.5 * dt() : dt(); }
};

// Analytic callbacks for manufactured fields. Any subset may be present;
// norm and transform code prefers these and falls back to finite differences
// on the sampled values when absent.
struct Analytic {
  std::function<cplx(const Vec&, double)> value;
  std::function<cplx(const Vec&, double, int)> dx;            // d/dx_i
  std::function<cplx(const Vec&, double, int, int)> dxx;      // d2/dx_i dx_j
  std::function<cplx(const Vec&, double, int)> dt;            // d^k/dt^k, k = 1..3
  std::function<cplx(const Vec&, double, int, int)> dxdt;     // d/dx_i d^k/dt^k
  std::function<cplx(const Vec&, double, int, int, int)> dxxdt; // d2/dx_i dx_j d^k/dt^k

  bool empty() const { return !value; }
};

struct SpaceTimeField {
  SpaceGrid grid;
  TimeAxis time;
  std::vector<cplx> values; // index time-major: k * grid.size() + grid.index(ix,iy)
  Analytic analytic;
  std::string label;

  SpaceTimeField() = default;
  SpaceTimeField(const SpaceGrid& g, const TimeAxis& ta) : grid(g), time(ta) {
    values.assign(static_cast<size_t>(g.size()) * ta.npts, cplx(0.0));
  }

  cplx& at(int ix, int iy, int k) { return values[static_cast<size_t>(k) * grid.size() + grid.index(ix, iy)]; }
  const cplx& at(int ix, int iy, int k) const {
    return values[static_cast<size_t>(k) * grid.size() + grid.index(ix, iy)];
  }

  bool has_analytic() const { return !analytic.empty(); }

  void sample_from_analytic() {
    if (!has_analytic()) throw std::logic_error("sample_from_analytic: no evaluator");
    for (int k = 0; k < time.npts; ++k)
      for (int iy = 0; iy < grid.npts[1]; ++iy)
        for (int ix = 0; ix < grid.npts[0]; ++ix)
          at(ix, iy, k) = analytic.value(grid.point(ix, iy), time.t(k));
  }

  static SpaceTimeField sampled(const SpaceGrid& g, const TimeAxis& ta, Analytic an,
                                const std::string& label = "") {
    SpaceTimeField f(g, ta);
    f.analytic = std::move(an);
    f.label = label;
    f.sample_from_analytic();
    return f;
  }
};

// A sum of separable modes S(x) * G(t); every manufactured family is built
// from these, which makes all mixed derivatives up to (dxx, dt^3) available
// in closed form.
struct SpaceMode {
  std::function<cplx(const Vec&)> v;
  std::function<cplx(const Vec&, int)> d;
  std::function<cplx(const Vec&, int, int)> dd;
};

struct TimeMode {
  // k-th time derivative, k = 0..3
  std::function<cplx(double, int)> d;
};

struct ModeSum {
  std::vector<std::pair<SpaceMode, TimeMode>> modes;

  void add(SpaceMode s, TimeMode g) { modes.emplace_back(std::move(s), std::move(g)); }

  Analytic build() const {
    auto m = modes; // captured by value; callbacks outlive the ModeSum
    Analytic a;
    a.value = [m](const Vec& x, double t) {
      cplx s = 0.0;
      for (const auto& [S, G] : m) s += S.v(x) * G.d(t, 0);
      return s;
    };
    a.dx = [m](const Vec& x, double t, int i) {
      cplx s = 0.0;
      for (const auto& [S, G] : m) s += S.d(x, i) * G.d(t, 0);
      return s;
    };
    a.dxx = [m](const Vec& x, double t, int i, int j) {
      cplx s = 0.0;
      for (const auto& [S, G] : m) s += S.dd(x, i, j) * G.d(t, 0);
      return s;
    };
    a.dt = [m](const Vec& x, double t, int k) {
      cplx s = 0.0;
      for (const auto& [S, G] : m) s += S.v(x) * G.d(t, k);
      return s;
    };
    a.dxdt = [m](const Vec& x, double t, int i, int k) {
      cplx s = 0.0;
      for (const auto& [S, G] : m) s += S.d(x, i) * G.d(t, k);
      return s;
    };
    a.dxxdt = [m](const Vec& x, double t, int i, int j, int k) {
      cplx s = 0.0;
      for (const auto& [S, G] : m) s += S.dd(x, i, j) * G.d(t, k);
      return s;
    };
    return a;
  }
};

// --- slice evaluation -------------------------------------------------------

// Values (and optionally first/second spatial derivatives) of d^k u/dt^k on
// the spatial grid at one time index. Uses analytic callbacks when present,
// otherwise 2nd-order finite differences (one-sided at boundaries/endpoints).
struct Slice {
  std::vector<cplx> v;
  std::vector<cplx> g[2];    // spatial gradient components
  std::vector<cplx> hess[3]; // xx, yy, xy
};

namespace detail {

inline cplx fd_time(const SpaceTimeField& f, int ix, int iy, int k, int order) {
  const int nt = f.time.npts;
  const double dt = f.time.dt();
  auto u = [&](int kk) { return f.at(ix, iy, kk); };
  if (order == 0) return u(k);
  if (order == 1) {
    if (k == 0) return (-1.5 * u(0) + 2.0 * u(1) - 0.5 * u(2)) / dt;
    if (k == nt - 1) return (1.5 * u(nt - 1) - 2.0 * u(nt - 2) + 0.5 * u(nt - 3)) / dt;
    return (u(k + 1) - u(k - 1)) / (2.0 * dt);
  }
  if (order == 2) {
    if (k == 0) return (2.0 * u(0) - 5.0 * u(1) + 4.0 * u(2) - u(3)) / (dt * dt);
    if (k == nt - 1) return (2.0 * u(nt - 1) - 5.0 * u(nt - 2) + 4.0 * u(nt - 3) - u(nt - 4)) / (dt * dt);
    return (u(k + 1) - 2.0 * u(k) + u(k - 1)) / (dt * dt);
  }
  if (order == 3) {
    if (k <= 1 || k >= nt - 2) {
      int kk = std::max(2, std::min(nt - 3, k));
      return (u(kk + 2) - 2.0 * u(kk + 1) + 2.0 * u(kk - 1) - u(kk - 2)) / (2.0 * dt * dt * dt);
    }
    return (u(k + 2) - 2.0 * u(k + 1) + 2.0 * u(k - 1) - u(k - 2)) / (2.0 * dt * dt * dt);
  }
  throw std::invalid_argument("fd_time: order > 3");
}

// 2nd-order first derivative of a sampled grid function along an axis
inline cplx fd_space1(const std::vector<cplx>& v, const SpaceGrid& g, int ix, int iy, int axis) {
  const int n = g.npts[axis];
  const double h = g.h(axis);
  int i = axis == 0 ? ix : iy;
  auto u = [&](int ii) { return axis == 0 ? v[g.index(ii, iy)] : v[g.index(ix, ii)]; };
  if (i == 0) return (-1.5 * u(0) + 2.0 * u(1) - 0.5 * u(2)) / h;
  if (i == n - 1) return (1.5 * u(n - 1) - 2.0 * u(n - 2) + 0.5 * u(n - 3)) / h;
  return (u(i + 1) - u(i - 1)) / (2.0 * h);
}

inline cplx fd_space2(const std::vector<cplx>& v, const SpaceGrid& g, int ix, int iy, int axis) {
  const int n = g.npts[axis];
  const double h = g.h(axis);
  int i = axis == 0 ? ix : iy;
  auto u = [&](int ii) { return axis == 0 ? v[g.index(ii, iy)] : v[g.index(ix, ii)]; };
  if (i == 0) return (2.0 * u(0) - 5.0 * u(1) + 4.0 * u(2) - u(3)) / (h * h);
  if (i == n - 1) return (2.0 * u(n - 1) - 5.0 * u(n - 2) + 4.0 * u(n - 3) - u(n - 4)) / (h * h);
  return (u(i + 1) - 2.0 * u(i) + u(i - 1)) / (h * h);
}

} // namespace detail

// time_order: k-th time derivative of the field; derivs: 0 values only,
// 1 adds gradient, 2 adds second derivatives. `t` must be a grid time for
// sampled-only fields; arbitrary for analytic ones.
inline Slice make_slice(const SpaceTimeField& f, double t, int time_order, int derivs) {
  Slice s;
  const SpaceGrid& g = f.grid;
  const int nsz = g.size();
  s.v.resize(nsz);
  if (derivs >= 1)
    for (int i = 0; i < g.dim(); ++i) s.g[i].resize(nsz);
  if (derivs >= 2)
    for (int i = 0; i < (g.dim() == 2 ? 3 : 1); ++i) s.hess[i].resize(nsz);

  if (f.has_analytic()) {
    const Analytic& a = f.analytic;
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix) {
        Vec x = g.point(ix, iy);
        int id = g.index(ix, iy);
        s.v[id] = time_order == 0 ? a.value(x, t) : a.dt(x, t, time_order);
        if (derivs >= 1)
          for (int i = 0; i < g.dim(); ++i)
            s.g[i][id] = time_order == 0 ? a.dx(x, t, i) : a.dxdt(x, t, i, time_order);
        if (derivs >= 2) {
          s.hess[0][id] = time_order == 0 ? a.dxx(x, t, 0, 0) : a.dxxdt(x, t, 0, 0, time_order);
          if (g.dim() == 2) {
            s.hess[1][id] = time_order == 0 ? a.dxx(x, t, 1, 1) : a.dxxdt(x, t, 1, 1, time_order);
            s.hess[2][id] = time_order == 0 ? a.dxx(x, t, 0, 1) : a.dxxdt(x, t, 0, 1, time_order);
          }
        }
      }
    return s;
  }

  // sampled path: locate the grid time
  double pos = (t - f.time.a) / f.time.dt();
  int k = static_cast<int>(std::lround(pos));
  if (k < 0 || k >= f.time.npts || std::abs(pos - k) > 1e-8)
    throw std::invalid_argument("make_slice: t off the sample grid for a non-analytic field");
  for (int iy = 0; iy < g.npts[1]; ++iy)
    for (int ix = 0; ix < g.npts[0]; ++ix)
      s.v[g.index(ix, iy)] = detail::fd_time(f, ix, iy, k, time_order);
  if (derivs >= 1)
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix)
        for (int i = 0; i < g.dim(); ++i)
          s.g[i][g.index(ix, iy)] = detail::fd_space1(s.v, g, ix, iy, i);
  if (derivs >= 2) {
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix) {
        int id = g.index(ix, iy);
        s.hess[0][id] = detail::fd_space2(s.v, g, ix, iy, 0);
        if (g.dim() == 2) s.hess[1][id] = detail::fd_space2(s.v, g, ix, iy, 1);
      }
    if (g.dim() == 2)
      for (int iy = 0; iy < g.npts[1]; ++iy)
        for (int ix = 0; ix < g.npts[0]; ++ix)
          s.hess[2][g.index(ix, iy)] = detail::fd_space1(s.g[1], g, ix, iy, 0);
  }
  return s;
}

} // namespace uclab

#endif
