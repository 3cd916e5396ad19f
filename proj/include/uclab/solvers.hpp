#ifndef UCLAB_SOLVERS_HPP
#define UCLAB_SOLVERS_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "uclab/field.hpp"
#include "uclab/media.hpp"
#include "uclab/norms.hpp"

namespace uclab {

enum class OperatorKind {
  Wave,        // div(A grad u) - u_tt
  Elliptic,    // div(A grad u)
  EllipticTau  // div(A grad u) + u_tautau
};

struct DiscreteOperator {
  AnisotropicMedium medium;
  OperatorKind kind = OperatorKind::Wave;
};

namespace detail {

inline double time_sign(OperatorKind k) {
  switch (k) {
    case OperatorKind::Wave: return -1.0;
    case OperatorKind::Elliptic: return 0.0;
    case OperatorKind::EllipticTau: return 1.0;
  }
  return 0.0;
}

} // namespace detail

// Pointwise operator application. Fields with analytic second derivatives and
// media with analytic coefficient derivatives give an exact Pu (up to FP);
// otherwise 2nd-order stencils, one-sided at the boundary.
inline SpaceTimeField apply_operator(const DiscreteOperator& op, const SpaceTimeField& u) {
  const SpaceGrid& g = u.grid;
  if (g.npts[0] < 3 || (g.dim() == 2 && g.npts[1] < 3))
    throw std::invalid_argument("apply_operator: grid too coarse (< 3 nodes per axis)");
  SpaceTimeField out(g, u.time);
  out.label = u.label + ":Pu";
  double ts = detail::time_sign(op.kind);
  double fd_step = 1e-5 * diameter(g.box);

  for (int k = 0; k < u.time.npts; ++k) {
    double t = u.time.t(k);
    Slice sl = make_slice(u, t, 0, 2);
    Slice stt = ts != 0.0 ? make_slice(u, t, 2, 0) : Slice{};
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix) {
        Vec x = g.point(ix, iy);
        int id = g.index(ix, iy);
        SymMat A = op.medium.at(x);
        cplx val = A.a[0][0] * sl.hess[0][id];
        if (g.dim() == 2)
          val += A.a[1][1] * sl.hess[1][id] + 2.0 * A.a[0][1] * sl.hess[2][id];
        for (int j = 0; j < g.dim(); ++j) {
          double divA_j = 0.0;
          for (int i = 0; i < g.dim(); ++i) divA_j += op.medium.deriv_at(x, i, fd_step).a[i][j];
          val += divA_j * sl.g[j][id];
        }
        if (ts != 0.0) val += ts * stt.v[id];
        out.at(ix, iy, k) = val;
      }
  }
  return out;
}

// Analytic Pu as a derived field evaluator (value and first time derivative),
// enough for || Pu ||_{H^1(I_T, L^2)}.
inline Analytic make_pu_analytic(const AnisotropicMedium& med, const Analytic& u, double fd_step,
                                 OperatorKind kind = OperatorKind::Wave) {
  if (!u.value || !u.dxx || !u.dx || !u.dt)
    throw std::invalid_argument("make_pu_analytic: field lacks analytic derivatives");
  double ts = detail::time_sign(kind);
  int dim = med.dim;
  auto apply = [med, u, fd_step, ts, dim](const Vec& x, double t, int tder) {
    SymMat A = med.at(x);
    cplx val = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        val += A.a[i][j] * (tder == 0 ? u.dxx(x, t, i, j) : u.dxxdt(x, t, i, j, tder));
    for (int j = 0; j < dim; ++j) {
      double divA_j = 0.0;
      for (int i = 0; i < dim; ++i) divA_j += med.deriv_at(x, i, fd_step).a[i][j];
      val += divA_j * (tder == 0 ? u.dx(x, t, j) : u.dxdt(x, t, j, tder));
    }
    if (ts != 0.0) val += ts * u.dt(x, t, tder + 2);
    return val;
  };
  Analytic pu;
  pu.value = [apply](const Vec& x, double t) { return apply(x, t, 0); };
  pu.dt = [apply](const Vec& x, double t, int k) { return apply(x, t, k); };
  return pu;
}

// --- forward wave solver ------------------------------------------------------

// Leapfrog for div(A grad u) - u_tt = F with Dirichlet data; 2nd order,
// energy-stable under dt <= h / sqrt(n kappa). Used only to manufacture
// non-symmetric solution families.
inline SpaceTimeField wave_solve(
    const AnisotropicMedium& med, const SpaceGrid& g, const TimeAxis& ta,
    const std::function<cplx(const Vec&, double)>& source,
    const std::function<cplx(const Vec&)>& u0, const std::function<cplx(const Vec&)>& v0,
    const std::function<cplx(const Vec&, double)>& bdry) {
  const int dim = g.dim();
  double hmin = g.h(0);
  if (dim == 2) hmin = std::min(hmin, g.h(1));
  double dt = ta.dt();
  if (dt > hmin / std::sqrt(static_cast<double>(dim) * med.kappa) + 1e-14)
    throw std::invalid_argument("wave_solve: CFL violation");

  const int nx = g.npts[0], ny = g.npts[1];
  auto interior = [&](int ix, int iy) {
    return ix > 0 && ix < nx - 1 && (dim == 1 || (iy > 0 && iy < ny - 1));
  };

  // flux-form div(A grad u) on interior nodes
  std::vector<cplx> lap(g.size());
  auto div_a_grad = [&](const std::vector<cplx>& u) {
    double hx = g.h(0), hy = dim == 2 ? g.h(1) : 1.0;
    auto at = [&](int ix, int iy) { return u[g.index(ix, iy)]; };
    auto dy_central = [&](int ix, int iy) -> cplx {
      if (dim == 1) return 0.0;
      int lo = std::max(iy - 1, 0), hi = std::min(iy + 1, ny - 1);
      return (at(ix, hi) - at(ix, lo)) / ((hi - lo) * hy);
    };
    auto dx_central = [&](int ix, int iy) -> cplx {
      int lo = std::max(ix - 1, 0), hi = std::min(ix + 1, nx - 1);
      return (at(hi, iy) - at(lo, iy)) / ((hi - lo) * hx);
    };
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        if (!interior(ix, iy)) {
          lap[g.index(ix, iy)] = 0.0;
          continue;
        }
        Vec xc = g.point(ix, iy);
        Vec xe = xc, xw = xc;
        xe[0] += 0.5 * hx;
        xw[0] -= 0.5 * hx;
        SymMat Ae = med.at(xe), Aw = med.at(xw);
        cplx fx_e = Ae.a[0][0] * (at(ix + 1, iy) - at(ix, iy)) / hx;
        cplx fx_w = Aw.a[0][0] * (at(ix, iy) - at(ix - 1, iy)) / hx;
        if (dim == 2) {
          fx_e += Ae.a[0][1] * 0.5 * (dy_central(ix, iy) + dy_central(ix + 1, iy));
          fx_w += Aw.a[0][1] * 0.5 * (dy_central(ix - 1, iy) + dy_central(ix, iy));
        }
        cplx val = (fx_e - fx_w) / hx;
        if (dim == 2) {
          Vec xn = xc, xs = xc;
          xn[1] += 0.5 * hy;
          xs[1] -= 0.5 * hy;
          SymMat An = med.at(xn), As = med.at(xs);
          cplx fy_n = An.a[1][1] * (at(ix, iy + 1) - at(ix, iy)) / hy +
                      An.a[0][1] * 0.5 * (dx_central(ix, iy) + dx_central(ix, iy + 1));
          cplx fy_s = As.a[1][1] * (at(ix, iy) - at(ix, iy - 1)) / hy +
                      As.a[0][1] * 0.5 * (dx_central(ix, iy - 1) + dx_central(ix, iy));
          val += (fy_n - fy_s) / hy;
        }
        lap[g.index(ix, iy)] = val;
      }
  };

  SpaceTimeField out(g, ta);
  out.label = "wave_solve";
  std::vector<cplx> prev(g.size()), cur(g.size()), next(g.size());
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      Vec x = g.point(ix, iy);
      prev[g.index(ix, iy)] = interior(ix, iy) ? u0(x) : bdry(x, ta.a);
    }
  // first step by Taylor expansion: u1 = u0 + dt v0 + dt^2/2 (div A grad u0 - F)
  div_a_grad(prev);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      int id = g.index(ix, iy);
      Vec x = g.point(ix, iy);
      if (interior(ix, iy))
        cur[id] = prev[id] + dt * v0(x) +
                  0.5 * dt * dt * (lap[id] - (source ? source(x, ta.a) : cplx(0.0)));
      else
        cur[id] = bdry(x, ta.t(1));
    }
  for (int id = 0; id < g.size(); ++id) out.values[id] = prev[id];
  if (ta.npts > 1)
    for (int id = 0; id < g.size(); ++id) out.values[g.size() + id] = cur[id];

  for (int k = 2; k < ta.npts; ++k) {
    div_a_grad(cur);
    double t = ta.t(k - 1);
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        int id = g.index(ix, iy);
        if (interior(ix, iy)) {
          cplx F = source ? source(g.point(ix, iy), t) : cplx(0.0);
          next[id] = 2.0 * cur[id] - prev[id] + dt * dt * (lap[id] - F);
        } else {
          next[id] = bdry(g.point(ix, iy), ta.t(k));
        }
      }
    std::swap(prev, cur);
    std::swap(cur, next);
    for (int id = 0; id < g.size(); ++id) out.values[static_cast<size_t>(k) * g.size() + id] = cur[id];
  }
  return out;
}

// --- harmonic extension -------------------------------------------------------

namespace detail {

// DST-I along one axis of a (mx x my) interior array
inline void dst_axis(std::vector<double>& a, int mx, int my, int axis) {
  std::vector<double> out(a.size(), 0.0);
  if (axis == 0) {
    for (int q = 0; q < my; ++q)
      for (int p = 0; p < mx; ++p) {
        double s = 0.0;
        for (int i = 0; i < mx; ++i)
          s += a[q * mx + i] * std::sin(M_PI * (p + 1) * (i + 1) / (mx + 1));
        out[q * mx + p] = s;
      }
  } else {
    for (int q = 0; q < my; ++q)
      for (int p = 0; p < mx; ++p) {
        double s = 0.0;
        for (int j = 0; j < my; ++j)
          s += a[j * mx + p] * std::sin(M_PI * (q + 1) * (j + 1) / (my + 1));
        out[q * mx + p] = s;
      }
  }
  a.swap(out);
}

// Exact (to roundoff) solve of the 5-point Dirichlet Laplace problem via the
// sine basis: diagonalizes the discrete operator, so the residual is at
// machine level, well below the 1e-10 contract.
inline std::vector<double> poisson_dirichlet(const SpaceGrid& g, const std::vector<double>& bdry_vals) {
  const int nx = g.npts[0], ny = g.npts[1];
  const int mx = nx - 2, my = ny - 2;
  const double hx = g.h(0), hy = g.h(1);
  std::vector<double> rhs(static_cast<size_t>(mx) * my, 0.0);
  auto bd = [&](int ix, int iy) { return bdry_vals[g.index(ix, iy)]; };
  for (int j = 0; j < my; ++j)
    for (int i = 0; i < mx; ++i) {
      int ix = i + 1, iy = j + 1;
      double b = 0.0;
      if (ix == 1) b += bd(0, iy) / (hx * hx);
      if (ix == nx - 2) b += bd(nx - 1, iy) / (hx * hx);
      if (iy == 1) b += bd(ix, 0) / (hy * hy);
      if (iy == ny - 2) b += bd(ix, ny - 1) / (hy * hy);
      rhs[j * mx + i] = b;
    }
  dst_axis(rhs, mx, my, 0);
  dst_axis(rhs, mx, my, 1);
  for (int j = 0; j < my; ++j)
    for (int i = 0; i < mx; ++i) {
      double sx = std::sin(M_PI * (i + 1) / (2.0 * (mx + 1)));
      double sy = std::sin(M_PI * (j + 1) / (2.0 * (my + 1)));
      double mu = 4.0 / (hx * hx) * sx * sx + 4.0 / (hy * hy) * sy * sy;
      rhs[j * mx + i] /= mu;
    }
  dst_axis(rhs, mx, my, 0);
  dst_axis(rhs, mx, my, 1);
  double scale = 4.0 / ((mx + 1) * (my + 1));
  for (auto& v : rhs) v *= scale;
  return rhs;
}

} // namespace detail

// Per-slice discrete-harmonic extension of a boundary trace: solves the
// 5-point (3-point in 1-D) Laplace equation with the trace as Dirichlet data.
// Time-derivative commutation d_t^k E phi = E d_t^k phi holds by linearity.
inline SpaceTimeField harmonic_extension(const std::function<cplx(const Vec&, double)>& trace,
                                         const SpaceGrid& g, const TimeAxis& ta) {
  SpaceTimeField out(g, ta);
  out.label = "harmonic_extension";
  const int nx = g.npts[0], ny = g.npts[1];
  for (int k = 0; k < ta.npts; ++k) {
    double t = ta.t(k);
    if (g.dim() == 1) {
      cplx a = trace(g.point(0, 0), t), b = trace(g.point(nx - 1, 0), t);
      for (int ix = 0; ix < nx; ++ix) {
        double s = static_cast<double>(ix) / (nx - 1);
        out.at(ix, 0, k) = (1.0 - s) * a + s * b;
      }
      continue;
    }
    std::vector<double> bre(g.size(), 0.0), bim(g.size(), 0.0);
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        if (ix == 0 || ix == nx - 1 || iy == 0 || iy == ny - 1) {
          cplx v = trace(g.point(ix, iy), t);
          bre[g.index(ix, iy)] = v.real();
          bim[g.index(ix, iy)] = v.imag();
        }
    auto wre = detail::poisson_dirichlet(g, bre);
    auto wim = detail::poisson_dirichlet(g, bim);
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        if (ix == 0 || ix == nx - 1 || iy == 0 || iy == ny - 1) {
          out.at(ix, iy, k) = cplx(bre[g.index(ix, iy)], bim[g.index(ix, iy)]);
        } else {
          int id = (iy - 1) * (nx - 2) + (ix - 1);
          out.at(ix, iy, k) = cplx(wre[id], wim[id]);
        }
      }
  }
  return out;
}

// --- energy -------------------------------------------------------------------

// E_u(t) = int_Omega [ A grad'u . grad'u + (u_t)^2 ] dx
inline double energy(const SpaceTimeField& u, const AnisotropicMedium& med, double t) {
  Slice sl = make_slice(u, t, 0, 1);
  Slice st = make_slice(u, t, 1, 0);
  const SpaceGrid& g = u.grid;
  return detail::interior_quad(g, [&](int ix, int iy) {
    int id = g.index(ix, iy);
    SymMat A = med.at(g.point(ix, iy));
    double acc = 0.0;
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j)
        acc += A.a[i][j] * (sl.g[i][id] * std::conj(sl.g[j][id])).real();
    acc += std::norm(st.v[id]);
    return acc;
  });
}

struct EnergyProfile {
  std::vector<double> times;
  std::vector<double> values;
};

inline EnergyProfile energy_profile(const SpaceTimeField& u, const AnisotropicMedium& med) {
  EnergyProfile p;
  for (int k = 0; k < u.time.npts; ++k) {
    p.times.push_back(u.time.t(k));
    p.values.push_back(energy(u, med, u.time.t(k)));
  }
  return p;
}

} // namespace uclab

#endif
