#ifndef UCLAB_MULTIPLIER_HPP
#define UCLAB_MULTIPLIER_HPP

#include <cmath>
#include <stdexcept>

#include "uclab/field.hpp"
#include "uclab/media.hpp"
#include "uclab/norms.hpp"
#include "uclab/solvers.hpp"

namespace uclab {

// The five terms of the multiplier identity on Omega x (a,b) with
// m(x) = x - x0 and w = 2 (m . grad'u) + (n-1) u:
//   E_u = T_B - T_bdry_time - T_source + T_flux
// for u vanishing on the lateral boundary.
struct MultiplierDecomposition {
  double T_B = 0.0;         // int int B grad'u . grad'u, b_ij = grad a_ij . m
  double T_bdry_time = 0.0; // [ int u_t w ]_a^b
  double T_source = 0.0;    // int int Pu w
  double T_flux = 0.0;      // int int (d_nu u)^2 (A nu.nu)(m.nu)
  double E_u = 0.0;         // int_a^b E_u(t) dt
  double identity_residual() const {
    return std::abs(E_u - (T_B - T_bdry_time - T_source + T_flux));
  }
  double scale() const {
    return std::max({std::abs(T_B), std::abs(T_bdry_time), std::abs(T_source),
                     std::abs(T_flux), std::abs(E_u), 1e-300});
  }
};

namespace mult_detail {

inline double re_dot(const cplx& a, const cplx& b) { return (a * std::conj(b)).real(); }

// max |u| on the lateral boundary over the time window
inline double lateral_trace_sup(const SpaceTimeField& u, double a, double b, int nt) {
  const SpaceGrid& g = u.grid;
  double sup = 0.0;
  for (int k = 0; k < nt; ++k) {
    double t = a + (b - a) * k / (nt - 1);
    Slice s = u.has_analytic() ? make_slice(u, t, 0, 0) : make_slice(u, u.time.t(k), 0, 0);
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix)
        if (ix == 0 || ix == g.npts[0] - 1 || (g.dim() == 2 && (iy == 0 || iy == g.npts[1] - 1)))
          sup = std::max(sup, std::abs(s.v[g.index(ix, iy)]));
  }
  return sup;
}

// int_Omega Re( u_t conj(w) ) at one time
inline double bracket_term(const SpaceTimeField& u, const Vec& x0, double t) {
  const SpaceGrid& g = u.grid;
  Slice sv = make_slice(u, t, 0, 1);
  Slice st = make_slice(u, t, 1, 0);
  int n = g.dim();
  return detail::interior_quad(g, [&](int ix, int iy) {
    int id = g.index(ix, iy);
    Vec m = g.point(ix, iy);
    for (int i = 0; i < n; ++i) m[i] -= x0[i];
    cplx w = static_cast<double>(n - 1) * sv.v[id];
    for (int i = 0; i < n; ++i) w += 2.0 * m[i] * sv.g[i][id];
    return re_dot(st.v[id], w);
  });
}

inline double time_trap_weight(int k, int nt, double dt) {
  return (k == 0 || k == nt - 1) ? 0.5 * dt : dt;
}

} // namespace mult_detail

// All five terms by quadrature; requires analytic derivatives (the
// manufactured-solution-first policy keeps discretization error out of the
// certified margins, so the identity residual measures the quadrature alone).
inline MultiplierDecomposition decompose(const SpaceTimeField& u, const AnisotropicMedium& med,
                                         const Vec& x0, double a, double b, int nt_quad = 65,
                                         double trace_tol = 1e-10) {
  if (!u.has_analytic())
    throw std::invalid_argument("decompose: analytic field required");
  double trace = mult_detail::lateral_trace_sup(u, a, b, 33);
  if (trace > trace_tol)
    throw std::invalid_argument("decompose: nonzero lateral trace (" + std::to_string(trace) + ")");

  const SpaceGrid& g = u.grid;
  const int n = g.dim();
  double fd_step = 1e-5 * diameter(g.box);
  Analytic pu = make_pu_analytic(med, u.analytic, fd_step);

  MultiplierDecomposition d;
  double dt = (b - a) / (nt_quad - 1);
  for (int k = 0; k < nt_quad; ++k) {
    double t = a + k * dt;
    double wt = mult_detail::time_trap_weight(k, nt_quad, dt);
    Slice sv = make_slice(u, t, 0, 1);
    Slice st = make_slice(u, t, 1, 0);

    // volume terms
    double tb = 0.0, tsrc = 0.0, eu = 0.0;
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix) {
        int id = g.index(ix, iy);
        double wq = g.trap_weight(ix, iy);
        Vec x = g.point(ix, iy);
        Vec m = x;
        for (int i = 0; i < n; ++i) m[i] -= x0[i];
        SymMat A = med.at(x);
        // B_ij = grad a_ij . m
        SymMat B = SymMat::diag(0.0, 0.0);
        for (int kk = 0; kk < n; ++kk) {
          SymMat D = med.deriv_at(x, kk, fd_step);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) B.a[i][j] += D.a[i][j] * m[kk];
        }
        double bq = 0.0, aq = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            bq += B.a[i][j] * mult_detail::re_dot(sv.g[i][id], sv.g[j][id]);
            aq += A.a[i][j] * mult_detail::re_dot(sv.g[i][id], sv.g[j][id]);
          }
        tb += wq * bq;
        eu += wq * (aq + std::norm(st.v[id]));
        cplx w = static_cast<double>(n - 1) * sv.v[id];
        for (int i = 0; i < n; ++i) w += 2.0 * m[i] * sv.g[i][id];
        tsrc += wq * mult_detail::re_dot(pu.value(x, t), w);
      }
    d.T_B += wt * tb;
    d.T_source += wt * tsrc;
    d.E_u += wt * eu;

    // boundary flux
    SubBoundary whole = SubBoundary::whole(g.box);
    double flux = 0.0;
    for (const auto& fc : whole.faces) {
      double sign = fc.side == 0 ? -1.0 : 1.0;
      flux += detail::face_quad(g, fc, [&](int ix, int iy) {
        int id = g.index(ix, iy);
        Vec x = g.point(ix, iy);
        Vec m = x;
        for (int i = 0; i < n; ++i) m[i] -= x0[i];
        Vec nu{0.0, 0.0};
        nu[fc.axis] = sign;
        double dnu2 = std::norm(sv.g[fc.axis][id]); // grad'u = d_nu u nu on the trace
        SymMat A = med.at(x);
        return dnu2 * A.quad(nu, n) * dot(m, nu, n);
      });
    }
    d.T_flux += wt * flux;
  }
  d.T_bdry_time =
      mult_detail::bracket_term(u, x0, b) - mult_detail::bracket_term(u, x0, a);
  return d;
}

// (b11): || w(.,t) || <= || 2 m . grad'u(.,t) || for u(.,t) = 0 on the boundary;
// the difference of squares is (1 - n^2) int u^2 (equality at n = 1).
struct WNormBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
  double predicted_gap2 = 0.0; // (n^2 - 1) int |u|^2
};

inline WNormBound w_norm_bound(const SpaceTimeField& u, const Vec& x0, double t,
                               double trace_tol = 1e-10) {
  const SpaceGrid& g = u.grid;
  Slice sv = make_slice(u, t, 0, 1);
  for (int iy = 0; iy < g.npts[1]; ++iy)
    for (int ix = 0; ix < g.npts[0]; ++ix)
      if (ix == 0 || ix == g.npts[0] - 1 || (g.dim() == 2 && (iy == 0 || iy == g.npts[1] - 1)))
        if (std::abs(sv.v[g.index(ix, iy)]) > trace_tol)
          throw std::invalid_argument("w_norm_bound: trace violation");
  int n = g.dim();
  double w2 = 0.0, mg2 = 0.0, u2 = 0.0;
  for (int iy = 0; iy < g.npts[1]; ++iy)
    for (int ix = 0; ix < g.npts[0]; ++ix) {
      int id = g.index(ix, iy);
      double wq = g.trap_weight(ix, iy);
      Vec m = g.point(ix, iy);
      for (int i = 0; i < n; ++i) m[i] -= x0[i];
      cplx mdg = 0.0;
      for (int i = 0; i < n; ++i) mdg += m[i] * sv.g[i][id];
      cplx w = 2.0 * mdg + static_cast<double>(n - 1) * sv.v[id];
      w2 += wq * std::norm(w);
      mg2 += wq * 4.0 * std::norm(mdg);
      u2 += wq * std::norm(sv.v[id]);
    }
  WNormBound r;
  r.lhs = std::sqrt(w2);
  r.rhs = std::sqrt(mg2);
  r.predicted_gap2 = (n * n - 1) * u2;
  return r;
}

// Explicit two-point energy bounds (b08), (b011), (b012).
struct TwoPointBounds {
  double Ea = 0.0, Eb = 0.0, E_total = 0.0, pu2 = 0.0, bracket = 0.0;
  double b08_margin = 0.0;  // relative margins, >= -1e-8 expected
  double b011_margin = 0.0;
  double b012_margin = 0.0;
};

inline TwoPointBounds two_point_energy_bounds(const SpaceTimeField& u,
                                              const AnisotropicMedium& med, const Vec& x0,
                                              double a, double b, double eps, double delta,
                                              int nt_quad = 129) {
  TwoPointBounds r;
  r.Ea = energy(u, med, a);
  r.Eb = energy(u, med, b);
  double dt = (b - a) / (nt_quad - 1);
  double fd_step = 1e-5 * diameter(u.grid.box);
  Analytic pu = make_pu_analytic(med, u.analytic, fd_step);
  for (int k = 0; k < nt_quad; ++k) {
    double t = a + k * dt;
    double wt = mult_detail::time_trap_weight(k, nt_quad, dt);
    r.E_total += wt * energy(u, med, t);
    Slice s = make_slice(u, t, 0, 0);
    const SpaceGrid& g = u.grid;
    double p2 = 0.0;
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix)
        p2 += g.trap_weight(ix, iy) * std::norm(pu.value(g.point(ix, iy), t));
    r.pu2 += wt * p2;
    (void)s;
  }
  r.bracket = mult_detail::bracket_term(u, x0, b) - mult_detail::bracket_term(u, x0, a);

  double dmax = diameter(u.grid.box);
  double lhs08 = r.Ea + r.Eb;
  double rhs08 = (2.0 / (b - a) + eps) * r.E_total + 2.0 / eps * r.pu2;
  r.b08_margin = (rhs08 - lhs08) / std::max({lhs08, rhs08, 1e-300});

  double dbar = std::max(delta, dmax * dmax / delta);
  double lhs011 = std::abs(r.bracket);
  double rhs011 = dbar * (r.Ea + r.Eb);
  r.b011_margin = (rhs011 - lhs011) / std::max({lhs011, rhs011, 1e-300});

  double rhs012 = 4.0 * dmax / (b - a) * r.E_total + (b - a) * dmax * r.pu2;
  r.b012_margin = (rhs012 - lhs011) / std::max({lhs011, rhs012, 1e-300});
  return r;
}

// Observability chain under the smallness gate: (b013), (b016), (b018) and
// the pr1 ratio.
struct ObservabilityBounds {
  bool gate_open = false;
  std::string gate_reason;
  double rho0 = 0.0;
  double c_min = 0.0;       // (4 + kappa) d0 / rho0
  double b013_margin = 0.0;
  double b016_margin = 0.0;
  double b018_margin = 0.0;
  double pr1_C = 0.0;       // fitted (||grad u(a)|| + ||grad u(b)||) / (||Pu|| + ||d_nu u||)
};

inline ObservabilityBounds observability_bound(const SpaceTimeField& u,
                                               const AnisotropicMedium& med, const Vec& x0,
                                               double a, double b, int nt_quad = 129) {
  ObservabilityBounds r;
  const Box& box = u.grid.box;
  double d0 = diameter(box);
  r.rho0 = smallness_margin(med, box);
  r.c_min = (4.0 + med.kappa) * d0 / std::max(r.rho0, 1e-300);
  if (r.rho0 <= 0.0) {
    r.gate_reason = "smallness gate closed: rho_0 <= 0";
    return r;
  }
  if (b - a <= r.c_min) {
    r.gate_reason = "interval too short: b - a <= (4+kappa) d0 / rho_0";
    return r;
  }
  r.gate_open = true;

  MultiplierDecomposition d = decompose(u, med, x0, a, b, nt_quad);
  // || d_nu u ||^2 over the lateral boundary
  SubBoundary gamma = SubBoundary::whole(box);
  double flux2 = 0.0;
  double dt = (b - a) / (nt_quad - 1);
  for (int k = 0; k < nt_quad; ++k) {
    double t = a + k * dt;
    double wt = mult_detail::time_trap_weight(k, nt_quad, dt);
    Slice s = make_slice(u, t, 0, 1);
    double nn = slice_space_norm(u.grid, s, SpaceNorm::BdNormalDerivL2, &gamma);
    flux2 += wt * nn * nn;
  }
  double fd_step = 1e-5 * diameter(box);
  Analytic pu = make_pu_analytic(med, u.analytic, fd_step);
  double pu2 = 0.0;
  for (int k = 0; k < nt_quad; ++k) {
    double t = a + k * dt;
    double wt = mult_detail::time_trap_weight(k, nt_quad, dt);
    const SpaceGrid& g = u.grid;
    double p2 = 0.0;
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix)
        p2 += g.trap_weight(ix, iy) * std::norm(pu.value(g.point(ix, iy), t));
    pu2 += wt * p2;
  }

  double kappa = med.kappa, vk = med.varkappa;
  double lhs013 = std::abs(d.T_B);
  double rhs013 = vk * kappa * d0 * d.E_u;
  r.b013_margin = (rhs013 - lhs013) / std::max({lhs013, rhs013, 1e-300});

  double lhs016 = std::abs(d.T_source);
  double rhs016 = kappa * d0 / (b - a) * d.E_u + d0 * (b - a) * pu2;
  r.b016_margin = (rhs016 - lhs016) / std::max({lhs016, rhs016, 1e-300});

  double lhs018 = d.E_u;
  double rhs018 = (4.0 + kappa) * d0 / (r.rho0 * (b - a)) * d.E_u +
                  2.0 * d0 * (b - a) / r.rho0 * pu2 + d0 * kappa / r.rho0 * flux2;
  r.b018_margin = (rhs018 - lhs018) / std::max({lhs018, rhs018, 1e-300});

  // pr1 conclusion in fitted-constant mode
  Slice sa = make_slice(u, a, 0, 1), sb = make_slice(u, b, 0, 1);
  double lhs_pr1 = slice_space_norm(u.grid, sa, SpaceNorm::GradL2) +
                   slice_space_norm(u.grid, sb, SpaceNorm::GradL2);
  double rhs_pr1 = std::sqrt(pu2) + std::sqrt(flux2);
  r.pr1_C = rhs_pr1 > 0.0 ? lhs_pr1 / rhs_pr1 : 0.0;
  return r;
}

} // namespace uclab

#endif
