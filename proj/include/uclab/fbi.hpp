#ifndef UCLAB_FBI_HPP
#define UCLAB_FBI_HPP

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "uclab/cutoff.hpp"
#include "uclab/field.hpp"
#include "uclab/norms.hpp"
#include "uclab/report.hpp"

namespace uclab {

struct TransformParams {
  double lambda = 8.0;
  double t0 = 0.0;
  double delta = 0.5;
  double T = 4.0;
  int tau_pts = 65;          // odd so tau = 0 is a node
  double osc_factor = 10.0;  // points per oscillation period
  double alpha = 0.5;        // Hoelder exponent for the C^{j,alpha} rows
  double lambda0 = 4.0;      // reference lower lambda in (e4)

  double tau_max() const { return delta * T / std::sqrt(8.0); }
  double decay_exponent() const { return lambda * (delta * T) * (delta * T) / 16.0; }

  void validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("TransformParams: lambda > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("TransformParams: delta in (0,1)");
    if (!(T > 0.0)) throw std::invalid_argument("TransformParams: T > 0");
    if (!(std::abs(t0) < (1.0 - delta) * T))
      throw std::invalid_argument("TransformParams: |t0| < (1-delta) T required");
    if (tau_pts < 5 || tau_pts % 2 == 0)
      throw std::invalid_argument("TransformParams: tau_pts must be odd and >= 5");
  }
};

struct TransformedField {
  SpaceTimeField field; // time axis = tau
  TransformParams params;
  std::string source_label;
};

namespace fbi_detail {

// 8-point Gauss-Legendre panel rule, nodes ascending
inline void gl8(double a, double b, int panel, int npanels, double* nodes, double* weights) {
  static constexpr double n8[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                   -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                   0.7966664774136267,  0.9602898564975363};
  static constexpr double w8[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                   0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                   0.2223810344533745, 0.1012285362903763};
  double w = (b - a) / npanels;
  double lo = a + panel * w;
  for (int i = 0; i < 8; ++i) {
    nodes[i] = lo + 0.5 * w * (1.0 + n8[i]);
    weights[i] = 0.5 * w * w8[i];
  }
}

// source values at an arbitrary time: analytic evaluation or linear
// interpolation between precomputed derivative slices
class SourceEval {
 public:
  SourceEval(const SpaceTimeField& f, int tderiv, int xderiv, const TransformParams& p)
      : f_(f), tderiv_(tderiv), xderiv_(xderiv) {
    if (f.has_analytic()) return;
    if (xderiv_ > 0)
      throw std::invalid_argument("fbi: spatial-derivative transform needs an analytic source");
    double max_dt = 2.0 * M_PI / (p.osc_factor * p.lambda * std::max(p.tau_max(), 1e-12));
    if (f.time.dt() > max_dt)
      throw std::runtime_error(
          "fbi: source time grid under-resolves the oscillation e^{i lambda tau t}; "
          "refusing to alias (need dt <= " + std::to_string(max_dt) + ")");
    rows_.resize(f.time.npts);
    for (int k = 0; k < f.time.npts; ++k) {
      Slice s = make_slice(f, f.time.t(k), tderiv_, 0);
      rows_[k] = std::move(s.v);
    }
  }

  void eval(double t, std::vector<cplx>& out) const {
    const SpaceGrid& g = f_.grid;
    out.resize(g.size());
    if (f_.has_analytic()) {
      const Analytic& a = f_.analytic;
      for (int iy = 0; iy < g.npts[1]; ++iy)
        for (int ix = 0; ix < g.npts[0]; ++ix) {
          Vec x = g.point(ix, iy);
          cplx v;
          if (xderiv_ > 0)
            v = tderiv_ == 0 ? a.dx(x, t, xderiv_ - 1) : a.dxdt(x, t, xderiv_ - 1, tderiv_);
          else
            v = tderiv_ == 0 ? a.value(x, t) : a.dt(x, t, tderiv_);
          out[g.index(ix, iy)] = v;
        }
      return;
    }
    double pos = (t - f_.time.a) / f_.time.dt();
    int k0 = static_cast<int>(std::floor(pos));
    k0 = std::max(0, std::min(f_.time.npts - 2, k0));
    double w = pos - k0;
    const auto& r0 = rows_[k0];
    const auto& r1 = rows_[k0 + 1];
    for (int i = 0; i < g.size(); ++i) out[i] = (1.0 - w) * r0[i] + w * r1[i];
  }

 private:
  const SpaceTimeField& f_;
  int tderiv_;
  int xderiv_;
  std::vector<std::vector<cplx>> rows_;
};

} // namespace fbi_detail

struct FbiJobSpec {
  int chi_deriv = 0;   // weight by chi, chi' or chi''
  int src_tderiv = 0;  // transform of d_t^k f
  int src_xderiv = 0;  // 1 + i: transform of d_{x_i} f
  bool damped = true;  // kernel e^{-lambda (s - i tau)^2 / 2 - lambda tau^2/2}
  int kernel_dtau = 0; // damped only: extra factor (i lambda s) per order
  cplx prefactor = 1.0;
};

// Composite Gauss-Legendre quadrature of
//   out(x, tau) = prefactor * int K(s, tau) chi^(c)(t) g(x, t) dt,  s = t - t0,
// with K the (optionally damped) Gaussian-modulated kernel. Integration runs
// over supp chi (or the transition bands when c >= 1); panel widths obey the
// oscillation-resolution rule.
inline SpaceTimeField fbi_quadrature(const SpaceTimeField& src, const CutoffProfile& chi,
                                     const TransformParams& p, const TimeAxis& tau_axis,
                                     const FbiJobSpec& job) {
  p.validate();
  if (!job.damped) {
    // cancellation guard: relative accuracy degrades like eps * e^{lambda tau^2/2}
    double worst = p.lambda * std::max(tau_axis.a * tau_axis.a, tau_axis.b * tau_axis.b) / 2.0;
    if (job.chi_deriv == 0 && worst > 34.0)
      throw std::runtime_error("fbi: undamped transform numerically meaningless at this lambda; "
                               "use the damped evaluation");
  }
  fbi_detail::SourceEval geval(src, job.src_tderiv, job.src_xderiv, p);

  // integration intervals
  std::vector<std::array<double, 2>> ivs;
  if (job.chi_deriv == 0)
    ivs.push_back({-p.T, p.T});
  else {
    ivs.push_back({-p.T, -chi.plateau()});
    ivs.push_back({chi.plateau(), p.T});
  }

  double tau_ref = std::max(std::abs(tau_axis.a), std::abs(tau_axis.b));
  double spacing = 2.0 * M_PI / (p.osc_factor * p.lambda * std::max(tau_ref, 1e-12));
  spacing = std::min(spacing, 0.03 / std::sqrt(p.lambda)); // resolve the Gaussian width
  spacing = std::min(spacing, chi.band() / 16.0);

  SpaceTimeField out(src.grid, tau_axis);
  out.label = src.label + ":fbi";
  const int nsz = src.grid.size();
  std::vector<cplx> gv;
  for (const auto& iv : ivs) {
    int npanels = std::max(2, static_cast<int>(std::ceil((iv[1] - iv[0]) / (8.0 * spacing))));
    double nodes[8], weights[8];
    for (int panel = 0; panel < npanels; ++panel) {
      fbi_detail::gl8(iv[0], iv[1], panel, npanels, nodes, weights);
      for (int q = 0; q < 8; ++q) {
        double t = nodes[q];
        auto [cv, c1, c2] = evaluate(chi, t);
        double cw = job.chi_deriv == 0 ? cv : (job.chi_deriv == 1 ? c1 : c2);
        if (cw == 0.0) continue;
        geval.eval(t, gv);
        double s = t - p.t0;
        for (int k = 0; k < tau_axis.npts; ++k) {
          double tau = tau_axis.t(k);
          double re_exp = job.damped ? -0.5 * p.lambda * s * s
                                     : -0.5 * p.lambda * (s * s - tau * tau);
          double phase = p.lambda * tau * s;
          cplx kern = std::exp(re_exp) * cplx(std::cos(phase), std::sin(phase));
          for (int d = 0; d < job.kernel_dtau; ++d) kern *= cplx(0.0, p.lambda * s);
          cplx w = job.prefactor * weights[q] * cw * kern;
          size_t off = static_cast<size_t>(k) * nsz;
          for (int i = 0; i < nsz; ++i) out.values[off + i] += w * gv[i];
        }
      }
    }
  }
  return out;
}

inline TimeAxis default_tau_axis(const TransformParams& p) {
  return TimeAxis(-p.tau_max(), p.tau_max(), p.tau_pts);
}

// h(x,tau) = int e^{-lambda (i tau - (t-t0))^2 / 2} chi(t) f(x,t) dt
inline TransformedField forward_transform(const SpaceTimeField& f, const CutoffProfile& chi,
                                          const TransformParams& p) {
  FbiJobSpec job;
  job.damped = false;
  TransformedField tf;
  tf.field = fbi_quadrature(f, chi, p, default_tau_axis(p), job);
  tf.params = p;
  tf.source_label = f.label;
  return tf;
}

// p(x,tau) = e^{-lambda tau^2/2} h(x,tau); stable at any lambda
inline SpaceTimeField damped_transform(const SpaceTimeField& f, const CutoffProfile& chi,
                                       const TransformParams& p, const TimeAxis& tau_axis) {
  FbiJobSpec job;
  job.damped = true;
  return fbi_quadrature(f, chi, p, tau_axis, job);
}

// --- residual operators -------------------------------------------------------

namespace fbi_detail {

inline cplx fd_tau(const SpaceTimeField& h, int i, int k, int order) {
  const int nsz = h.grid.size();
  double ht = h.time.dt();
  auto v = [&](int kk) { return h.values[static_cast<size_t>(kk) * nsz + i]; };
  switch (order) {
    case 1: return (v(k + 1) - v(k - 1)) / (2.0 * ht);
    case 2: return (v(k + 1) - 2.0 * v(k) + v(k - 1)) / (ht * ht);
    case 3: return (v(k + 2) - 2.0 * v(k + 1) + 2.0 * v(k - 1) - v(k - 2)) / (2.0 * ht * ht * ht);
    case 4:
      return (v(k + 2) - 4.0 * v(k + 1) + 6.0 * v(k) - 4.0 * v(k - 1) + v(k - 2)) /
             (ht * ht * ht * ht);
  }
  throw std::invalid_argument("fd_tau order");
}

// L2(Q_tau) norm of a sampled (x, tau) field over an index subrange in tau
inline double l2_xt(const SpaceTimeField& h, int k_lo, int k_hi) {
  const SpaceGrid& g = h.grid;
  double acc = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    double wt = (k == k_lo || k == k_hi) ? 0.5 * h.time.dt() : h.time.dt();
    double sl = 0.0;
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix)
        sl += g.trap_weight(ix, iy) * std::norm(h.values[static_cast<size_t>(k) * g.size() + g.index(ix, iy)]);
    acc += wt * sl;
  }
  return std::sqrt(acc);
}

} // namespace fbi_detail

struct ResidualResult {
  SpaceTimeField residual_field; // k or g
  CheckReport identity;          // d_tau h = i F(d_t f) + k (resp. 2nd order)
  CheckReport bound;             // (e3+) resp. (e3), log-domain margin
  double log_norm = 0.0;         // ln || k || (resp. ln || g ||), for rate fits
};

// first residual: k(x,tau) = i int e^{-lambda(i tau - (t-t0))^2/2} chi'(t) f dt
inline ResidualResult first_residual(const SpaceTimeField& f, const CutoffProfile& chi,
                                     const TransformParams& p, bool check_identity = true) {
  ResidualResult rr;
  FbiJobSpec kj;
  kj.chi_deriv = 1;
  kj.damped = false;
  kj.prefactor = cplx(0.0, 1.0);
  TimeAxis tau = default_tau_axis(p);
  rr.residual_field = fbi_quadrature(f, chi, p, tau, kj);
  double knorm = fbi_detail::l2_xt(rr.residual_field, 0, tau.npts - 1);
  rr.log_norm = std::log(std::max(knorm, 1e-300));

  // (e3+): ||k|| <= varpi e^{-lambda (dT)^2/16} ||f||_{L2(R_{delta/2})}
  double fnorm = bochner_norm(f, 0, SpaceNorm::L2, window_J(p.delta / 2.0, p.T));
  rr.bound.id = "C-L3.2k";
  rr.bound.anchor = "(e3+)";
  rr.bound.mode = CheckMode::ExplicitConstant;
  double log_rhs = std::log(chi.varpi) - p.decay_exponent() + std::log(std::max(fnorm, 1e-300));
  rr.bound.margins = {log_rhs - rr.log_norm};
  rr.bound.verdict = rr.bound.margins[0] >= -1e-8 ? Verdict::Pass : Verdict::Fail;

  rr.identity.id = "C-L3.2k-identity";
  rr.identity.anchor = "(e2+)";
  rr.identity.mode = CheckMode::Identity;
  if (check_identity) {
    TransformedField h = forward_transform(f, chi, p);
    FbiJobSpec dj;
    dj.damped = false;
    dj.src_tderiv = 1;
    dj.prefactor = cplx(0.0, 1.0);
    SpaceTimeField ift = fbi_quadrature(f, chi, p, tau, dj);
    const int nsz = f.grid.size();
    double resid2 = 0.0, ref2 = 0.0, m3 = 0.0;
    for (int k = 2; k < tau.npts - 2; ++k)
      for (int i = 0; i < nsz; ++i) {
        cplx lhs = fbi_detail::fd_tau(h.field, i, k, 1);
        cplx rhs = ift.values[static_cast<size_t>(k) * nsz + i] +
                   rr.residual_field.values[static_cast<size_t>(k) * nsz + i];
        resid2 += std::norm(lhs - rhs);
        ref2 += std::norm(rhs);
        m3 = std::max(m3, std::abs(fbi_detail::fd_tau(h.field, i, k, 3)));
      }
    (void)ref2;
    double ht = tau.dt();
    double tol = ht * ht / 6.0 * m3 * 10.0 + 1e-12;
    double resid = std::sqrt(resid2 / std::max(1.0, static_cast<double>((tau.npts - 4) * nsz)));
    rr.identity.margins = {tol - resid, resid};
    rr.identity.notes.push_back("fd2 tolerance = (h^2/6) max|d3 h| * 10 = " + std::to_string(tol));
    rr.identity.verdict = resid <= tol ? Verdict::Pass : Verdict::Fail;
  } else {
    rr.identity.verdict = Verdict::Skip;
    rr.identity.reason = "identity check not requested";
  }
  return rr;
}

// second residual: g = - int e^{...} (2 chi' d_t f + chi'' f) dt
inline ResidualResult second_residual(const SpaceTimeField& f, const CutoffProfile& chi,
                                      const TransformParams& p, bool check_identity = true) {
  ResidualResult rr;
  TimeAxis tau = default_tau_axis(p);
  FbiJobSpec j1;
  j1.chi_deriv = 1;
  j1.src_tderiv = 1;
  j1.damped = false;
  j1.prefactor = -2.0;
  FbiJobSpec j2;
  j2.chi_deriv = 2;
  j2.damped = false;
  j2.prefactor = -1.0;
  rr.residual_field = fbi_quadrature(f, chi, p, tau, j1);
  SpaceTimeField part2 = fbi_quadrature(f, chi, p, tau, j2);
  for (size_t i = 0; i < rr.residual_field.values.size(); ++i)
    rr.residual_field.values[i] += part2.values[i];
  double gnorm = fbi_detail::l2_xt(rr.residual_field, 0, tau.npts - 1);
  rr.log_norm = std::log(std::max(gnorm, 1e-300));

  // (e3): ||g|| <= 2 varpi (2T+1) (dT)^-1 e^{-lambda (dT)^2/16} ||f||_{H1(J_{d/2}, L2)}
  double fnorm = bochner_norm(f, 1, SpaceNorm::L2, window_J(p.delta / 2.0, p.T));
  rr.bound.id = "C-L3.2g";
  rr.bound.anchor = "(e3)";
  rr.bound.mode = CheckMode::ExplicitConstant;
  double log_rhs = std::log(2.0 * chi.varpi * (2.0 * p.T + 1.0) / (p.delta * p.T)) -
                   p.decay_exponent() + std::log(std::max(fnorm, 1e-300));
  rr.bound.margins = {log_rhs - rr.log_norm};
  rr.bound.verdict = rr.bound.margins[0] >= -1e-8 ? Verdict::Pass : Verdict::Fail;

  rr.identity.id = "C-L3.2g-identity";
  rr.identity.anchor = "(e2)";
  rr.identity.mode = CheckMode::Identity;
  if (check_identity) {
    TransformedField h = forward_transform(f, chi, p);
    FbiJobSpec dj;
    dj.damped = false;
    dj.src_tderiv = 2;
    dj.prefactor = -1.0;
    SpaceTimeField mftt = fbi_quadrature(f, chi, p, tau, dj);
    const int nsz = f.grid.size();
    double resid2 = 0.0, m4 = 0.0;
    int cnt = 0;
    for (int k = 2; k < tau.npts - 2; ++k)
      for (int i = 0; i < nsz; ++i) {
        cplx lhs = fbi_detail::fd_tau(h.field, i, k, 2);
        cplx rhs = mftt.values[static_cast<size_t>(k) * nsz + i] +
                   rr.residual_field.values[static_cast<size_t>(k) * nsz + i];
        resid2 += std::norm(lhs - rhs);
        m4 = std::max(m4, std::abs(fbi_detail::fd_tau(h.field, i, k, 4)));
        ++cnt;
      }
    double ht = tau.dt();
    double tol = ht * ht / 12.0 * m4 * 10.0 + 1e-10;
    double resid = std::sqrt(resid2 / std::max(1, cnt));
    rr.identity.margins = {tol - resid, resid};
    rr.identity.notes.push_back("fd2 tolerance = h^2/12 max|d4 h| * 10 = " + std::to_string(tol));
    rr.identity.verdict = resid <= tol ? Verdict::Pass : Verdict::Fail;
  } else {
    rr.identity.verdict = Verdict::Skip;
    rr.identity.reason = "identity check not requested";
  }
  return rr;
}

// --- reconstruction at the center time ----------------------------------------

struct ReconstructionResult {
  double full_line_error = 0.0;  // || f_rec - f(.,t0) ||_{L2} via the full-line formula
  double truncated_error = 0.0;  // || f1 - f(.,t0) ||_{L2}
  double e35_margin = 0.0;       // log margins of the explicit split bounds
  double e37_margin = 0.0;
  double e38_margin = 0.0;
  double e311_margin = 0.0;
  bool e35_skipped = false;      // undamped norm unavailable at huge lambda
  double fitted_C = 0.0;         // (e5) structural constant: RHS / LHS
  double lhs_h1 = 0.0;
  double rhs_total = 0.0;
};

inline ReconstructionResult reconstruct_center(const SpaceTimeField& f, const CutoffProfile& chi,
                                               const TransformParams& p, int tau_pts_ext = 513) {
  if (p.lambda < 16.0 / (p.T * p.T))
    throw std::invalid_argument("reconstruct_center: lambda below lambda_0 = 16/T^2");
  ReconstructionResult out;
  double tm = p.tau_max();
  double tail = std::sqrt(80.0 / p.lambda);
  double text = tm + tail;
  TimeAxis tau_ext(-text, text, tau_pts_ext | 1);
  SpaceTimeField pd = damped_transform(f, chi, p, tau_ext); // e^{-l tau^2/2} h
  FbiJobSpec dj;
  dj.damped = true;
  dj.kernel_dtau = 1;
  SpaceTimeField dpd = fbi_quadrature(f, chi, p, tau_ext, dj); // d_tau p

  const SpaceGrid& g = f.grid;
  const int nsz = g.size();
  const int nt = tau_ext.npts;
  auto val = [&](const SpaceTimeField& fld, int i, int k) {
    return fld.values[static_cast<size_t>(k) * nsz + i];
  };

  // reference slice and norms
  Slice ref = make_slice(f, p.t0, 0, 1);
  double ref_l2 = slice_space_norm(g, ref, SpaceNorm::L2);
  double f_l2_qt = bochner_norm(f, 0, SpaceNorm::L2, window_full(p.T));
  double ft_l2_qt = bochner_norm(f, 1, SpaceNorm::L2, window_full(p.T));

  std::vector<cplx> frec(nsz, 0.0), f1(nsz, 0.0), g1(nsz, 0.0), g2(nsz, 0.0), g3(nsz, 0.0);
  double pref = p.lambda / (2.0 * M_PI);
  for (int k = 0; k < nt; ++k) {
    double tau = tau_ext.t(k);
    double w = (k == 0 || k == nt - 1) ? 0.5 * tau_ext.dt() : tau_ext.dt();
    bool inside = std::abs(tau) <= tm + 1e-14;
    for (int i = 0; i < nsz; ++i) {
      cplx pv = val(pd, i, k);
      frec[i] += pref * w * pv;
      if (inside) {
        f1[i] += pref * w * pv;
      } else {
        g2[i] += -w / (2.0 * M_PI) / (tau * tau) * pv;
        cplx dtau_h_damped = val(dpd, i, k) + p.lambda * tau * pv;
        g3[i] += w / (2.0 * M_PI) / tau * dtau_h_damped;
      }
    }
  }
  // g1 term: boundary values at +-tau_m (nearest nodes of the extended grid)
  int km = static_cast<int>(std::lround((tm - tau_ext.a) / tau_ext.dt()));
  int kmm = static_cast<int>(std::lround((-tm - tau_ext.a) / tau_ext.dt()));
  for (int i = 0; i < nsz; ++i)
    g1[i] = std::sqrt(2.0) / (p.delta * p.T) / M_PI * (val(pd, i, km) + val(pd, i, kmm));

  auto l2_of = [&](const std::vector<cplx>& v) {
    double a = 0.0;
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix)
        a += g.trap_weight(ix, iy) * std::norm(v[g.index(ix, iy)]);
    return std::sqrt(a);
  };
  std::vector<cplx> diff(nsz);
  for (int i = 0; i < nsz; ++i) diff[i] = frec[i] - ref.v[i];
  out.full_line_error = l2_of(diff);
  for (int i = 0; i < nsz; ++i) diff[i] = f1[i] - ref.v[i];
  out.truncated_error = l2_of(diff);

  double dT = p.delta * p.T;
  double l14 = std::pow(p.lambda, 0.25);
  // (E3.7), (E3.8), (E3.11) explicit split bounds in the log domain
  out.e37_margin = std::log(2.0 * std::sqrt(2.0) / std::pow(M_PI, 0.75) / l14 / dT *
                            std::max(f_l2_qt, 1e-300)) -
                   std::log(std::max(l2_of(g1), 1e-300));
  out.e38_margin = std::log(std::sqrt(2.0) / std::pow(M_PI, 0.75) / l14 / dT *
                            std::max(f_l2_qt, 1e-300)) -
                   std::log(std::max(l2_of(g2), 1e-300));
  out.e311_margin = std::log(std::pow(2.0, 0.25) / std::sqrt(M_PI * dT * p.lambda) *
                             (ft_l2_qt + f_l2_qt / dT)) -
                    std::log(std::max(l2_of(g3), 1e-300));

  // (E3.5) needs the undamped transform norm; guard against cancellation loss
  if (p.decay_exponent() <= 30.0) {
    TransformedField h = forward_transform(f, chi, p);
    double hnorm = fbi_detail::l2_xt(h.field, 0, h.field.time.npts - 1);
    out.e35_margin = std::log(std::pow(p.lambda, 0.75) / (2.0 * std::pow(M_PI, 0.75)) *
                              std::max(hnorm, 1e-300)) -
                     std::log(std::max(l2_of(f1), 1e-300));
    // (e5) structural fitted constant with the H1 norms
    FbiJobSpec xj;
    xj.damped = false;
    xj.src_xderiv = 1;
    TimeAxis tau_in = default_tau_axis(p);
    SpaceTimeField hx = fbi_quadrature(f, chi, p, tau_in, xj);
    double h_h1 = 0.0;
    {
      double a = fbi_detail::l2_xt(h.field, 0, tau_in.npts - 1);
      double b = fbi_detail::l2_xt(hx, 0, tau_in.npts - 1);
      double c = 0.0;
      if (g.dim() == 2) {
        FbiJobSpec yj = xj;
        yj.src_xderiv = 2;
        SpaceTimeField hy = fbi_quadrature(f, chi, p, tau_in, yj);
        c = fbi_detail::l2_xt(hy, 0, tau_in.npts - 1);
      }
      h_h1 = std::sqrt(a * a + b * b + c * c);
    }
    Slice refg = make_slice(f, p.t0, 0, 1);
    out.lhs_h1 = slice_space_norm(g, refg, SpaceNorm::H1);
    double f_h1h1 = bochner_norm(f, 1, SpaceNorm::H1, window_full(p.T));
    out.rhs_total = std::pow(p.lambda, 0.75) * h_h1 +
                    std::pow(p.delta, -1.5) * std::pow(p.lambda, -0.25) * f_h1h1;
    out.fitted_C = out.lhs_h1 > 0.0 ? out.rhs_total / out.lhs_h1 : 0.0;
  } else {
    out.e35_skipped = true;
  }
  return out;
}

// --- explicit transform bounds (e1), (e1+), (e4) -------------------------------

struct TransformBoundResult {
  double e1_margin = 0.0;
  double e1b_margin = 0.0;
  double e4_j0_margin = 0.0;
  double e4_j1_margin = 0.0;
};

inline TransformBoundResult transform_bound_certificates(const SpaceTimeField& f,
                                                         const CutoffProfile& chi,
                                                         const TransformParams& p) {
  TransformBoundResult out;
  TransformedField h = forward_transform(f, chi, p);
  TimeAxis tau = h.field.time;
  double log_e = p.decay_exponent();

  // (e1): volume L2 bound with constant 2^{1/4} T
  double hnorm = fbi_detail::l2_xt(h.field, 0, tau.npts - 1);
  double fnorm = bochner_norm(f, 0, SpaceNorm::L2, window_full(p.T));
  out.e1_margin = 0.25 * std::log(2.0) + std::log(p.T) + log_e +
                  std::log(std::max(fnorm, 1e-300)) - std::log(std::max(hnorm, 1e-300));

  // (e1+): boundary version on Sigma = bdry x I
  SubBoundary gamma = SubBoundary::whole(f.grid.box);
  double hb = bochner_norm(h.field, 0, SpaceNorm::BdL2,
                           window_interval(tau.a, tau.b), &gamma);
  double fb = bochner_norm(f, 0, SpaceNorm::BdL2, window_full(p.T), &gamma);
  out.e1b_margin = 0.25 * std::log(2.0) + std::log(p.T) + log_e +
                   std::log(std::max(fb, 1e-300)) - std::log(std::max(hb, 1e-300));

  // (e4): Hoelder bounds with C = 3 (1 + varpi) max(1/lambda0, (T/2)^{1-alpha})
  double C = 3.0 * (1.0 + chi.varpi) *
             std::max(1.0 / p.lambda0, std::pow(p.T / 2.0, 1.0 - p.alpha));
  double lhs0 = c0alpha_norm(h.field, p.alpha);
  double rhs0 = c0alpha_norm(f, p.alpha);
  out.e4_j0_margin = std::log(C * p.lambda) + log_e + std::log(std::max(rhs0, 1e-300)) -
                     std::log(std::max(lhs0, 1e-300));

  // j = 1 needs the transform derivative fields: d_xi h = F(d_xi f),
  // d_tau h = i F(d_t f) + k
  {
    double lhs1 = sup_norm(h.field);
    auto pts = spacetime_points(h.field);
    lhs1 += pairwise_holder(h.field.values, pts, p.alpha);
    for (int i = 0; i < f.grid.dim(); ++i) {
      FbiJobSpec xj;
      xj.damped = false;
      xj.src_xderiv = i + 1;
      SpaceTimeField hx = fbi_quadrature(f, chi, p, tau, xj);
      double sup = 0.0;
      for (const auto& z : hx.values) sup = std::max(sup, std::abs(z));
      lhs1 += sup + pairwise_holder(hx.values, pts, p.alpha);
    }
    FbiJobSpec dj;
    dj.damped = false;
    dj.src_tderiv = 1;
    dj.prefactor = cplx(0.0, 1.0);
    SpaceTimeField htau = fbi_quadrature(f, chi, p, tau, dj);
    FbiJobSpec kk;
    kk.chi_deriv = 1;
    kk.damped = false;
    kk.prefactor = cplx(0.0, 1.0);
    SpaceTimeField kf = fbi_quadrature(f, chi, p, tau, kk);
    for (size_t i = 0; i < htau.values.size(); ++i) htau.values[i] += kf.values[i];
    double sup = 0.0;
    for (const auto& z : htau.values) sup = std::max(sup, std::abs(z));
    lhs1 += sup + pairwise_holder(htau.values, pts, p.alpha);

    double rhs1 = c1alpha_norm(f, p.alpha);
    out.e4_j1_margin = std::log(C * p.lambda / p.delta) + log_e +
                       std::log(std::max(rhs1, 1e-300)) - std::log(std::max(lhs1, 1e-300));
  }
  return out;
}

// CSV dump of a transformed field: x, tau, Re h, Im h
inline void write_transform_csv(std::ostream& os, const TransformedField& tf) {
  os << "# source=" << tf.source_label << " lambda=" << tf.params.lambda
     << " t0=" << tf.params.t0 << " delta=" << tf.params.delta << " T=" << tf.params.T << "\n";
  os << "x0,x1,tau,re,im\n";
  const SpaceGrid& g = tf.field.grid;
  for (int k = 0; k < tf.field.time.npts; ++k)
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix) {
        Vec x = g.point(ix, iy);
        cplx v = tf.field.at(ix, iy, k);
        os << x[0] << "," << (g.dim() == 2 ? x[1] : 0.0) << "," << tf.field.time.t(k) << ","
           << v.real() << "," << v.imag() << "\n";
      }
}

} // namespace uclab

#endif
