#ifndef UCLAB_NORMS_HPP
#define UCLAB_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "uclab/field.hpp"
#include "uclab/geometry.hpp"

namespace uclab {

// Time windows: a union of up to two intervals (J_delta has two bands).
using TimeWindow = std::vector<std::array<double, 2>>;

inline TimeWindow window_full(double T) { return {{-T, T}}; }
inline TimeWindow window_interval(double a, double b) { return {{a, b}}; }
// J_{delta} = { t : (1-delta) T < |t| < T }
inline TimeWindow window_J(double delta, double T) {
  return {{-T, -(1.0 - delta) * T}, {(1.0 - delta) * T, T}};
}

enum class SpaceNorm {
  L2,
  H1,      // full norm: (L2^2 + |grad|^2)^(1/2)
  H2,      // adds all second derivatives
  GradL2,  // seminorm |grad u|_{L2}
  BdL2,    // trace L2 on Gamma
  BdH1,    // trace L2 + tangential derivative
  BdH2,    // adds second tangential derivative
  BdH12Surr, // interpolation surrogate (|.|_L2 |.|_H1)^(1/2)
  BdH32Surr, // interpolation surrogate (|.|_H1 |.|_H2)^(1/2)
  BdNormalDerivL2 // ||d_nu u||_{L2(Gamma)}
};

namespace detail {

inline double abs2(const cplx& z) { return std::norm(z); }

// interior trapezoid quadrature of a nodal quantity
template <typename F>
double interior_quad(const SpaceGrid& g, F value) {
  double s = 0.0;
  for (int iy = 0; iy < g.npts[1]; ++iy)
    for (int ix = 0; ix < g.npts[0]; ++ix) s += g.trap_weight(ix, iy) * value(ix, iy);
  return s;
}

// visit the nodes of one boundary face with their trapezoid weights
// (counting measure at dim 1)
template <typename F>
void face_for_each(const SpaceGrid& g, const BoundaryFace& f, F visit) {
  const Box& box = g.box;
  if (box.dim == 1) {
    int ix = f.side == 0 ? 0 : g.npts[0] - 1;
    visit(ix, 0, 1.0);
    return;
  }
  int tang = 1 - f.axis;
  int nt = g.npts[tang];
  double h = g.h(tang);
  for (int i = 0; i < nt; ++i) {
    double c = box.lo[tang] + i * h;
    if (c < f.t_lo - 1e-12 || c > f.t_hi + 1e-12) continue;
    double w = (i == 0 || i == nt - 1) ? 0.5 * h : h;
    int ix = f.axis == 0 ? (f.side == 0 ? 0 : g.npts[0] - 1) : i;
    int iy = f.axis == 0 ? i : (f.side == 0 ? 0 : g.npts[1] - 1);
    visit(ix, iy, w);
  }
}

template <typename F>
double face_quad(const SpaceGrid& g, const BoundaryFace& f, F value) {
  double s = 0.0;
  face_for_each(g, f, [&](int ix, int iy, double w) { s += w * value(ix, iy); });
  return s;
}

template <typename F>
double boundary_quad(const SpaceGrid& g, const SubBoundary& gamma, F value) {
  double s = 0.0;
  for (const auto& f : gamma.faces) s += face_quad(g, f, value);
  return s;
}

} // namespace detail

// Spatial norm of one slice. Boundary kinds integrate over `gamma`
// (defaults to the whole boundary).
inline double slice_space_norm(const SpaceGrid& g, const Slice& s, SpaceNorm kind,
                               const SubBoundary* gamma_opt = nullptr) {
  using detail::abs2;
  SubBoundary whole;
  const SubBoundary* gamma = gamma_opt;
  if (!gamma) {
    whole = SubBoundary::whole(g.box);
    gamma = &whole;
  }
  auto l22 = [&] {
    return detail::interior_quad(g, [&](int ix, int iy) { return abs2(s.v[g.index(ix, iy)]); });
  };
  auto grad2 = [&] {
    return detail::interior_quad(g, [&](int ix, int iy) {
      double a = abs2(s.g[0][g.index(ix, iy)]);
      if (g.dim() == 2) a += abs2(s.g[1][g.index(ix, iy)]);
      return a;
    });
  };
  auto hess2 = [&] {
    return detail::interior_quad(g, [&](int ix, int iy) {
      int id = g.index(ix, iy);
      double a = abs2(s.hess[0][id]);
      if (g.dim() == 2) a += abs2(s.hess[1][id]) + 2.0 * abs2(s.hess[2][id]);
      return a;
    });
  };
  auto bd_l22 = [&] {
    return detail::boundary_quad(g, *gamma, [&](int ix, int iy) { return abs2(s.v[g.index(ix, iy)]); });
  };
  auto bd_tang2 = [&](const BoundaryFace& f) {
    if (g.dim() == 1) return 0.0;
    int tang = 1 - f.axis;
    return detail::face_quad(g, f, [&](int ix, int iy) { return abs2(s.g[tang][g.index(ix, iy)]); });
  };
  auto bd_tang22 = [&](const BoundaryFace& f) {
    if (g.dim() == 1) return 0.0;
    int tang = 1 - f.axis;
    return detail::face_quad(g, f,
                             [&](int ix, int iy) { return abs2(s.hess[tang][g.index(ix, iy)]); });
  };

  switch (kind) {
    case SpaceNorm::L2:
      return std::sqrt(l22());
    case SpaceNorm::GradL2:
      return std::sqrt(grad2());
    case SpaceNorm::H1:
      return std::sqrt(l22() + grad2());
    case SpaceNorm::H2:
      return std::sqrt(l22() + grad2() + hess2());
    case SpaceNorm::BdL2:
      return std::sqrt(bd_l22());
    case SpaceNorm::BdH1: {
      double a = bd_l22();
      for (const auto& f : gamma->faces) a += bd_tang2(f);
      return std::sqrt(a);
    }
    case SpaceNorm::BdH2: {
      double a = bd_l22();
      for (const auto& f : gamma->faces) a += bd_tang2(f) + bd_tang22(f);
      return std::sqrt(a);
    }
    case SpaceNorm::BdH12Surr: {
      double l2 = slice_space_norm(g, s, SpaceNorm::BdL2, gamma);
      double h1 = slice_space_norm(g, s, SpaceNorm::BdH1, gamma);
      return std::sqrt(l2 * h1);
    }
    case SpaceNorm::BdH32Surr: {
      double h1 = slice_space_norm(g, s, SpaceNorm::BdH1, gamma);
      double h2 = slice_space_norm(g, s, SpaceNorm::BdH2, gamma);
      return std::sqrt(h1 * h2);
    }
    case SpaceNorm::BdNormalDerivL2: {
      double a = 0.0;
      for (const auto& f : gamma->faces) {
        double sign = f.side == 0 ? -1.0 : 1.0; // outward normal
        a += detail::face_quad(g, f, [&](int ix, int iy) {
          return detail::abs2(sign * s.g[f.axis][g.index(ix, iy)]);
        });
      }
      return std::sqrt(a);
    }
  }
  return 0.0;
}

inline int derivs_needed(SpaceNorm kind) {
  switch (kind) {
    case SpaceNorm::L2:
    case SpaceNorm::BdL2:
      return 0;
    case SpaceNorm::H2:
    case SpaceNorm::BdH2:
    case SpaceNorm::BdH32Surr:
      return 2;
    default:
      return 1;
  }
}

// || u ||^2 = sum_{j<=k} int_W || d_t^j u (.,t) ||_S^2 dt, trapezoid in t.
// Analytic fields are resampled on `nt_quad` points per window interval;
// sampled fields use their own grid times clipped to the window.
inline double bochner_norm(const SpaceTimeField& f, int k, SpaceNorm kind, const TimeWindow& W,
                           const SubBoundary* gamma = nullptr, int nt_quad = 0) {
  if (k < 0 || k > 3) throw std::invalid_argument("bochner_norm: time order 0..3");
  int derivs = derivs_needed(kind);
  double acc = 0.0;
  for (const auto& iv : W) {
    if (!(iv[1] > iv[0])) throw std::invalid_argument("bochner_norm: empty window interval");
    if (iv[0] < f.time.a - 1e-9 || iv[1] > f.time.b + 1e-9)
      throw std::invalid_argument("bochner_norm: window outside grid");
    if (f.has_analytic()) {
      int m = nt_quad > 1 ? nt_quad : 65;
      double dt = (iv[1] - iv[0]) / (m - 1);
      for (int j = 0; j <= k; ++j)
        for (int i = 0; i < m; ++i) {
          double t = iv[0] + i * dt;
          double w = (i == 0 || i == m - 1) ? 0.5 * dt : dt;
          Slice sl = make_slice(f, t, j, derivs);
          double nn = slice_space_norm(f.grid, sl, kind, gamma);
          acc += w * nn * nn;
        }
    } else {
      // clip to sample times
      double dt = f.time.dt();
      int i0 = static_cast<int>(std::ceil((iv[0] - f.time.a) / dt - 1e-9));
      int i1 = static_cast<int>(std::floor((iv[1] - f.time.a) / dt + 1e-9));
      for (int j = 0; j <= k; ++j)
        for (int i = i0; i <= i1; ++i) {
          double w = (i == i0 || i == i1) ? 0.5 * dt : dt;
          Slice sl = make_slice(f, f.time.t(i), j, derivs);
          double nn = slice_space_norm(f.grid, sl, kind, gamma);
          acc += w * nn * nn;
        }
    }
  }
  return std::sqrt(acc);
}

// Convenience: pure spatial Sobolev norm of one slice of the field.
inline double grid_sobolev_norm(const SpaceTimeField& f, double t, SpaceNorm kind,
                                const SubBoundary* gamma = nullptr) {
  Slice sl = make_slice(f, t, 0, derivs_needed(kind));
  return slice_space_norm(f.grid, sl, kind, gamma);
}

// --- Hoelder machinery -------------------------------------------------------

// max over grid point pairs of |v_p - v_q| / |p - q|^alpha, exact on the
// sample set (a lower bound for the continuum seminorm). Deterministic
// parallel max over row blocks.
inline double pairwise_holder(const std::vector<cplx>& v, const std::vector<std::array<double, 3>>& pts,
                              double alpha) {
  const size_t N = v.size();
  if (N < 2) throw std::invalid_argument("holder_seminorm: single-point grid");
  unsigned nthreads = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<double> best(nthreads, 0.0);
  // d^alpha via the cheap special cases used throughout the harness
  auto dpow = [alpha](double d2) {
    if (alpha == 0.5) return std::sqrt(std::sqrt(d2));
    if (alpha == 1.0) return std::sqrt(d2);
    return std::pow(d2, 0.5 * alpha);
  };
  auto work = [&](unsigned tid) {
    double b = 0.0;
    for (size_t i = tid; i < N; i += nthreads) {
      const auto& pi = pts[i];
      for (size_t j = i + 1; j < N; ++j) {
        const auto& pj = pts[j];
        double dx = pi[0] - pj[0], dy = pi[1] - pj[1], dz = pi[2] - pj[2];
        double d2 = dx * dx + dy * dy + dz * dz;
        double num = std::abs(v[i] - v[j]);
        double q = num / dpow(d2);
        if (q > b) b = q;
      }
    }
    best[tid] = b;
  };
  std::vector<std::thread> th;
  for (unsigned t = 1; t < nthreads; ++t) th.emplace_back(work, t);
  work(0);
  for (auto& t : th) t.join();
  double m = 0.0;
  for (double b : best) m = std::max(m, b);
  return m;
}

inline std::vector<std::array<double, 3>> spacetime_points(const SpaceTimeField& f) {
  std::vector<std::array<double, 3>> pts;
  pts.reserve(static_cast<size_t>(f.grid.size()) * f.time.npts);
  for (int k = 0; k < f.time.npts; ++k)
    for (int iy = 0; iy < f.grid.npts[1]; ++iy)
      for (int ix = 0; ix < f.grid.npts[0]; ++ix) {
        Vec x = f.grid.point(ix, iy);
        pts.push_back({x[0], f.grid.dim() == 2 ? x[1] : 0.0, f.time.t(k)});
      }
  return pts;
}

inline double holder_seminorm(const SpaceTimeField& f, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("holder_seminorm: alpha in (0,1]");
  return pairwise_holder(f.values, spacetime_points(f), alpha);
}

inline double sup_norm(const SpaceTimeField& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

// gradient component fields over (x, t): spatial axes then time
inline std::vector<std::vector<cplx>> gradient_components(const SpaceTimeField& f) {
  const SpaceGrid& g = f.grid;
  int ncomp = g.dim() + 1;
  std::vector<std::vector<cplx>> comp(ncomp);
  for (auto& c : comp) c.resize(f.values.size());
  for (int k = 0; k < f.time.npts; ++k) {
    Slice sl = make_slice(f, f.time.t(k), 0, 1);
    Slice st = make_slice(f, f.time.t(k), 1, 0);
    size_t off = static_cast<size_t>(k) * g.size();
    for (int id = 0; id < g.size(); ++id) {
      for (int i = 0; i < g.dim(); ++i) comp[i][off + id] = sl.g[i][id];
      comp[g.dim()][off + id] = st.v[id];
    }
  }
  return comp;
}

// || f ||_{C^{0,alpha}} = sup |f| + [f]_alpha over the space-time grid
inline double c0alpha_norm(const SpaceTimeField& f, double alpha) {
  return sup_norm(f) + holder_seminorm(f, alpha);
}

// || f ||_{C^{1,alpha}} = sup|f| + sum_j ( sup|d_j f| + [d_j f]_alpha ),
// the sum running over all space-time coordinates.
inline double c1alpha_norm(const SpaceTimeField& f, double alpha) {
  auto pts = spacetime_points(f);
  double total = sup_norm(f);
  for (const auto& comp : gradient_components(f)) {
    double sup = 0.0;
    for (const auto& z : comp) sup = std::max(sup, std::abs(z));
    total += sup + pairwise_holder(comp, pts, alpha);
  }
  return total;
}

// Named norm values of one field, ready for serialization.
struct NormReport {
  std::string label;
  double l2 = 0.0;            // L2(I, L2)
  double h1 = 0.0;            // L2(I, H1)
  double bochner_h1_l2 = 0.0; // H1(I, L2)
  double bochner_h2_h2 = 0.0; // H2(I, H2)
  double holder_semi = 0.0;   // [f]_alpha
  double c0alpha = 0.0;
  double c1alpha = 0.0;
  double h11_sigma = 0.0;     // H^{1,1}(Sigma)
  double bd_h12_surr = 0.0;   // surrogate H^{1/2} trace, L2 in time
  double bd_h32_surr = 0.0;   // surrogate H^{3/2} trace, L2 in time
  double alpha = 0.5;
  int nx = 0, ny = 0, nt = 0;
};

inline NormReport compute_norm_report(const SpaceTimeField& f, double alpha = 0.5,
                                      const SubBoundary* gamma = nullptr) {
  NormReport r;
  r.label = f.label;
  r.alpha = alpha;
  r.nx = f.grid.npts[0];
  r.ny = f.grid.npts[1];
  r.nt = f.time.npts;
  auto W = window_interval(f.time.a, f.time.b);
  r.l2 = bochner_norm(f, 0, SpaceNorm::L2, W);
  r.h1 = bochner_norm(f, 0, SpaceNorm::H1, W);
  r.bochner_h1_l2 = bochner_norm(f, 1, SpaceNorm::L2, W);
  r.bochner_h2_h2 = bochner_norm(f, 2, SpaceNorm::H2, W);
  r.holder_semi = holder_seminorm(f, alpha);
  r.c0alpha = c0alpha_norm(f, alpha);
  r.c1alpha = c1alpha_norm(f, alpha);
  r.h11_sigma = bochner_norm(f, 0, SpaceNorm::BdH1, W, gamma) +
                bochner_norm(f, 1, SpaceNorm::BdL2, W, gamma);
  r.bd_h12_surr = bochner_norm(f, 0, SpaceNorm::BdH12Surr, W, gamma);
  r.bd_h32_surr = bochner_norm(f, 0, SpaceNorm::BdH32Surr, W, gamma);
  return r;
}

} // namespace uclab

#endif
