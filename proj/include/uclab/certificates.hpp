#ifndef UCLAB_CERTIFICATES_HPP
#define UCLAB_CERTIFICATES_HPP

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "uclab/families.hpp"
#include "uclab/fbi.hpp"
#include "uclab/functionals.hpp"
#include "uclab/harness.hpp"
#include "uclab/moduli.hpp"
#include "uclab/multiplier.hpp"
#include "uclab/report.hpp"

namespace uclab {

struct CertificateConfig {
  uint64_t seed = 1;
  int family_size = 20;
  int grid_level = 0; // 0 = default resolutions; 1 shifts every grid up one notch
  std::vector<double> lambdas = {4, 8, 16, 32, 64};
  std::vector<double> rate_lambdas = {64, 128, 256, 512, 1024};
  std::vector<double> deltas = {0.25, 0.5};
  double T = 4.0;
  std::string medium = "identity";
  double alpha = 0.5;
  double assembly_c = 0.01;
  double assembly_s = 0.25;
};

struct CertificateRow {
  std::string id;
  std::string anchor;
  CheckMode mode;
  std::string group; // fbi | multiplier | appendix | assembly
  std::function<CheckReport(const CertificateConfig&)> run;
};

namespace cert_detail {

inline const Box kSquare = Box(vec2(0, 0), vec2(1, 1), 2);

// the shared manufactured set for the transform rows: n = 1 oscillators,
// profiled waves and random smooth fields, plus a couple of 2-D instances
inline std::vector<SpaceTimeField> fbi_field_set(double T, uint64_t seed, int count) {
  std::vector<SpaceTimeField> out;
  SpaceGrid g1(Box(0.0, 1.0), 7);
  TimeAxis ta(-T, T, 129);
  CounterRng rng(seed, 0x66626973u);
  int idx = 0;
  while (static_cast<int>(out.size()) < count) {
    int kind = idx % 4;
    if (kind == 0) {
      double omega = 0.5 + 0.4 * idx;
      ModeSum ms;
      SpaceMode sp;
      sp.v = [](const Vec&) { return cplx(1.0); };
      sp.d = [](const Vec&, int) { return cplx(0.0); };
      sp.dd = [](const Vec&, int, int) { return cplx(0.0); };
      ms.add(sp, exp_i_time_mode(omega));
      out.push_back(SpaceTimeField::sampled(g1, ta, ms.build(), "osc"));
    } else if (kind == 1) {
      ModeSum ms;
      ms.add(trig_space_mode(M_PI * (1 + idx % 3), 0.0, 0.0, 0.0, 1),
             cos_time_mode(rng.uniform(0.5, 2.5), rng.uniform(0.0, 2 * M_PI)));
      out.push_back(SpaceTimeField::sampled(g1, ta, ms.build(), "profiled"));
    } else if (kind == 2) {
      out.push_back(random_smooth_field(g1, ta, seed + idx, 3, false, true));
    } else {
      SpaceGrid g2(kSquare, 5);
      out.push_back(random_smooth_field(g2, ta, seed + idx, 2, false, false));
    }
    ++idx;
  }
  return out;
}

inline CheckReport stamped(CheckReport rep, const CertificateConfig& cfg,
                           std::chrono::steady_clock::time_point start) {
  rep.seed = cfg.seed;
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

inline void pass_if_margins(CheckReport& rep, double tol) {
  rep.verdict = Verdict::Pass;
  for (double m : rep.margins)
    if (m < -tol) rep.verdict = Verdict::Fail;
}

inline SpaceTimeField zero_like(const SpaceGrid& g, const TimeAxis& ta) {
  SpaceTimeField f(g, ta);
  Analytic a;
  a.value = [](const Vec&, double) { return cplx(0.0); };
  a.dx = [](const Vec&, double, int) { return cplx(0.0); };
  a.dxx = [](const Vec&, double, int, int) { return cplx(0.0); };
  a.dt = [](const Vec&, double, int) { return cplx(0.0); };
  a.dxdt = [](const Vec&, double, int, int) { return cplx(0.0); };
  a.dxxdt = [](const Vec&, double, int, int, int) { return cplx(0.0); };
  f.analytic = a;
  return f;
}

// ---------------- fbi group ----------------

inline CheckReport run_l31(const CertificateConfig& cfg, bool boundary) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = boundary ? "C-L3.1b" : "C-L3.1a";
  rep.anchor = boundary ? "(e1+)" : "(e1)";
  rep.mode = CheckMode::ExplicitConstant;
  auto fields = fbi_field_set(cfg.T, cfg.seed, cfg.family_size);
  for (double delta : cfg.deltas) {
    auto chi = build_cutoff(delta, cfg.T);
    for (double lambda : cfg.lambdas)
      for (const auto& f : fields) {
        TransformParams p;
        p.lambda = lambda;
        p.delta = delta;
        p.T = cfg.T;
        p.tau_pts = 33;
        auto h = forward_transform(f, chi, p);
        double lhs, rhs;
        if (boundary) {
          SubBoundary gamma = SubBoundary::whole(f.grid.box);
          lhs = bochner_norm(h.field, 0, SpaceNorm::BdL2,
                             window_interval(h.field.time.a, h.field.time.b), &gamma);
          rhs = bochner_norm(f, 0, SpaceNorm::BdL2, window_full(cfg.T), &gamma);
        } else {
          lhs = fbi_detail::l2_xt(h.field, 0, h.field.time.npts - 1);
          rhs = bochner_norm(f, 0, SpaceNorm::L2, window_full(cfg.T));
        }
        double margin = 0.25 * std::log(2.0) + std::log(cfg.T) + p.decay_exponent() +
                        std::log(std::max(rhs, 1e-300)) - std::log(std::max(lhs, 1e-300));
        rep.margins.push_back(margin);
      }
  }
  pass_if_margins(rep, 1e-8);
  return stamped(rep, cfg, start);
}

inline CheckReport run_l32(const CertificateConfig& cfg, bool second) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = second ? "C-L3.2g" : "C-L3.2k";
  rep.anchor = second ? "(e3)" : "(e3+)";
  rep.mode = CheckMode::ExplicitConstant;
  bool hard_fail = false;
  auto fields = fbi_field_set(cfg.T, cfg.seed, cfg.family_size);
  for (double delta : cfg.deltas) {
    auto chi = build_cutoff(delta, cfg.T);
    for (double lambda : cfg.lambdas)
      for (const auto& f : fields) {
        TransformParams p;
        p.lambda = lambda;
        p.delta = delta;
        p.T = cfg.T;
        p.tau_pts = 33;
        auto rr = second ? second_residual(f, chi, p, false) : first_residual(f, chi, p, false);
        rep.margins.push_back(rr.bound.margins[0]);
      }
  }
  // identity spot checks on a fine tau grid
  {
    auto chi = build_cutoff(0.5, cfg.T);
    for (double omega : {1.0, 2.0}) {
      ModeSum ms;
      SpaceMode sp;
      sp.v = [](const Vec&) { return cplx(1.0); };
      sp.d = [](const Vec&, int) { return cplx(0.0); };
      sp.dd = [](const Vec&, int, int) { return cplx(0.0); };
      ms.add(sp, exp_i_time_mode(omega));
      SpaceGrid g1(Box(0.0, 1.0), 3);
      auto f = SpaceTimeField::sampled(g1, TimeAxis(-cfg.T, cfg.T, 129), ms.build(), "osc");
      TransformParams p;
      p.lambda = 50.0;
      p.delta = 0.5;
      p.T = cfg.T;
      p.tau_pts = 2049;
      auto rr = second ? second_residual(f, chi, p, true) : first_residual(f, chi, p, true);
      if (!rr.identity.passed()) {
        hard_fail = true;
        rep.reason = "residual identity check failed";
      }
      rep.notes.push_back("identity residual " + std::to_string(rr.identity.margins[1]));
    }
  }
  // decay-rate fit at the admissible edge t0
  {
    double delta = 0.5;
    auto chi = build_cutoff(delta, cfg.T);
    double dT = delta * cfg.T;
    ModeSum ms;
    SpaceMode sp;
    sp.v = [](const Vec&) { return cplx(1.0); };
    sp.d = [](const Vec&, int) { return cplx(0.0); };
    sp.dd = [](const Vec&, int, int) { return cplx(0.0); };
    ms.add(sp, exp_i_time_mode(1.0));
    SpaceGrid g1(Box(0.0, 1.0), 3);
    auto f = SpaceTimeField::sampled(g1, TimeAxis(-cfg.T, cfg.T, 129), ms.build(), "rate");
    std::vector<std::pair<double, double>> pts;
    for (double lambda : cfg.rate_lambdas) {
      TransformParams p;
      p.lambda = lambda;
      p.delta = delta;
      p.T = cfg.T;
      p.t0 = (1.0 - delta) * cfg.T * (1.0 - 1e-6);
      p.tau_pts = 65;
      auto rr = second ? second_residual(f, chi, p, false) : first_residual(f, chi, p, false);
      pts.push_back({lambda, std::exp(rr.log_norm)});
    }
    auto fit = fit_rate(pts);
    double target = -dT * dT / 16.0;
    double gap = std::abs(fit.slope - target) / std::abs(target);
    rep.fitted.present = true;
    rep.fitted.value = fit.slope;
    rep.fitted.spread = gap;
    rep.notes.push_back("rate target " + std::to_string(target) + ", fitted " +
                        std::to_string(fit.slope) + ", R2 " + std::to_string(fit.r2));
    if (gap > 0.10 || fit.r2 < 0.99) {
      hard_fail = true;
      rep.reason = "decay-rate fit outside tolerance";
      rep.margins.push_back(-gap);
    }
  }
  pass_if_margins(rep, 1e-8);
  if (hard_fail) rep.verdict = Verdict::Fail;
  return stamped(rep, cfg, start);
}

inline CheckReport run_l33(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-L3.3";
  rep.anchor = "(e4)";
  rep.mode = CheckMode::ExplicitConstant;
  auto fields = fbi_field_set(cfg.T, cfg.seed, cfg.family_size);
  double lambda0 = *std::min_element(cfg.lambdas.begin(), cfg.lambdas.end());
  // the C^{j,alpha}(Q_T) norms of f do not depend on lambda or delta; sample
  // them once per field on a dedicated Hoelder grid (exact on that sample set)
  std::vector<double> rhs0s, rhs1s;
  for (const auto& f : fields) {
    auto fh = SpaceTimeField::sampled(f.grid, TimeAxis(f.time.a, f.time.b, 33), f.analytic,
                                      f.label);
    rhs0s.push_back(c0alpha_norm(fh, cfg.alpha));
    rhs1s.push_back(c1alpha_norm(fh, cfg.alpha));
  }
  for (double delta : cfg.deltas) {
    auto chi = build_cutoff(delta, cfg.T);
    for (double lambda : cfg.lambdas)
      for (size_t fi = 0; fi < fields.size(); ++fi) {
        const auto& f = fields[fi];
        TransformParams p;
        p.lambda = lambda;
        p.delta = delta;
        p.T = cfg.T;
        p.tau_pts = 21;
        p.alpha = cfg.alpha;
        p.lambda0 = lambda0;
        double C = 3.0 * (1.0 + chi.varpi) *
                   std::max(1.0 / p.lambda0, std::pow(p.T / 2.0, 1.0 - p.alpha));
        double log_pref = std::log(C * p.lambda) + p.decay_exponent();
        TransformedField h = forward_transform(f, chi, p);
        TimeAxis tau = h.field.time;
        auto pts = spacetime_points(h.field);
        double lhs0 = sup_norm(h.field) + pairwise_holder(h.field.values, pts, p.alpha);
        rep.margins.push_back(log_pref + std::log(std::max(rhs0s[fi], 1e-300)) -
                              std::log(std::max(lhs0, 1e-300)));
        // j = 1: transform derivative fields
        double lhs1 = lhs0;
        for (int i = 0; i < f.grid.dim(); ++i) {
          FbiJobSpec xj;
          xj.damped = false;
          xj.src_xderiv = i + 1;
          SpaceTimeField hx = fbi_quadrature(f, chi, p, tau, xj);
          lhs1 += sup_norm(hx) + pairwise_holder(hx.values, pts, p.alpha);
        }
        {
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
          lhs1 += sup_norm(htau) + pairwise_holder(htau.values, pts, p.alpha);
        }
        rep.margins.push_back(log_pref - std::log(p.delta) +
                              std::log(std::max(rhs1s[fi], 1e-300)) -
                              std::log(std::max(lhs1, 1e-300)));
      }
  }
  pass_if_margins(rep, 1e-8);
  return stamped(rep, cfg, start);
}

inline CheckReport run_l34(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-L3.4";
  rep.anchor = "(e5), (E3.5), (E3.7), (E3.8), (E3.11)";
  rep.mode = CheckMode::FittedConstant;
  bool hard_fail = false;
  ModeSum ms;
  SpaceMode sp;
  sp.v = [](const Vec&) { return cplx(1.0); };
  sp.d = [](const Vec&, int) { return cplx(0.0); };
  sp.dd = [](const Vec&, int, int) { return cplx(0.0); };
  ms.add(sp, exp_i_time_mode(2.0));
  SpaceGrid g1(Box(0.0, 1.0), 5);
  auto f = SpaceTimeField::sampled(g1, TimeAxis(-cfg.T, cfg.T, 129), ms.build(), "recon");

  // full-line reconstruction stays exact across the lambda range
  for (double lambda : {16.0, 64.0, 256.0, 1024.0}) {
    TransformParams p;
    p.lambda = lambda;
    p.delta = 0.5;
    p.T = cfg.T;
    p.t0 = 0.25;
    auto chi = build_cutoff(p.delta, p.T);
    auto r = reconstruct_center(f, chi, p);
    rep.margins.push_back(1e-6 - r.full_line_error);
    if (!r.e35_skipped) {
      rep.margins.push_back(r.e35_margin);
    }
    rep.margins.push_back(r.e37_margin);
    rep.margins.push_back(r.e38_margin);
    rep.margins.push_back(r.e311_margin);
  }

  // tail decay: fitted exponent of the truncated error against ln(lambda);
  // points below the double-precision floor are excluded
  {
    double delta = 0.25;
    auto chi = build_cutoff(delta, cfg.T);
    std::vector<std::pair<double, double>> pts;
    std::vector<double> fitted_Cs;
    for (double lambda : {16.0, 32.0, 64.0, 128.0, 256.0}) {
      TransformParams p;
      p.lambda = lambda;
      p.delta = delta;
      p.T = cfg.T;
      p.t0 = 0.25;
      auto r = reconstruct_center(f, chi, p);
      if (r.truncated_error > 1e-12) pts.push_back({std::log(lambda), r.truncated_error});
      if (!r.e35_skipped && r.fitted_C > 0.0) fitted_Cs.push_back(r.fitted_C);
    }
    if (pts.size() >= 4) {
      auto fit = fit_rate(pts);
      rep.notes.push_back("tail exponent vs ln lambda: " + std::to_string(fit.slope));
      rep.margins.push_back(-0.2 - fit.slope); // require slope <= -0.2
    } else {
      rep.notes.push_back("tail already at the floating-point floor; decay consistent");
    }
    if (!fitted_Cs.empty()) {
      double lo = *std::min_element(fitted_Cs.begin(), fitted_Cs.end());
      double hi = *std::max_element(fitted_Cs.begin(), fitted_Cs.end());
      rep.fitted.present = true;
      rep.fitted.value = hi;
      rep.fitted.spread = hi / std::max(lo, 1e-300);
      if (rep.fitted.spread > 10.0) {
        hard_fail = true;
        rep.reason = "(e5) fitted constant unstable across the lambda sweep";
      }
    }
  }
  pass_if_margins(rep, 1e-8);
  if (hard_fail) rep.verdict = Verdict::Fail;
  return stamped(rep, cfg, start);
}

inline CheckReport run_el_scale(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-EL-scale";
  rep.anchor = "(el6)-(el10)";
  rep.mode = CheckMode::Identity;
  Box omega(0.0, 1.0);
  int nx = 65, nt = 129;
  for (double rho : {0.5, 1.0, 2.0}) {
    auto u = random_smooth_field(SpaceGrid(omega, nx), TimeAxis(-rho, rho, nt), cfg.seed + 17, 3,
                                 false);
    auto ua = u.analytic;
    Analytic va;
    va.value = [ua, rho](const Vec& x, double t) { return ua.value(x, rho * t); };
    va.dx = [ua, rho](const Vec& x, double t, int i) { return ua.dx(x, rho * t, i); };
    va.dt = [ua, rho](const Vec& x, double t, int k) {
      return std::pow(rho, k) * ua.dt(x, rho * t, k);
    };
    auto v = SpaceTimeField::sampled(SpaceGrid(omega, nx), TimeAxis(-1, 1, nt), va, "v");

    double lu = bochner_norm(u, 0, SpaceNorm::L2, window_interval(-rho, rho), nullptr, nt);
    double lv = bochner_norm(v, 0, SpaceNorm::L2, window_interval(-1, 1), nullptr, nt);
    rep.margins.push_back(1e-10 - std::abs(lv - lu / std::sqrt(rho)) / std::max(1.0, lu));

    SubBoundary gamma = SubBoundary::whole(omega);
    double bu = bochner_norm(u, 0, SpaceNorm::BdL2, window_interval(-rho, rho), &gamma, nt);
    double bv = bochner_norm(v, 0, SpaceNorm::BdL2, window_interval(-1, 1), &gamma, nt);
    rep.margins.push_back(1e-10 - std::abs(bv - bu / std::sqrt(rho)) / std::max(1.0, bu));

    // full space-time gradients for el7/el10
    auto gradn = [&](const SpaceTimeField& w, double s, bool bdry) {
      double acc = 0.0;
      for (int i = 0; i < nt; ++i) {
        double t = -s + 2.0 * s * i / (nt - 1);
        double wt = (i == 0 || i == nt - 1) ? s / (nt - 1) : 2.0 * s / (nt - 1);
        Slice sx = make_slice(w, t, 0, 1);
        Slice st = make_slice(w, t, 1, 0);
        if (!bdry) {
          for (int ix = 0; ix < nx; ++ix)
            acc += wt * w.grid.trap_weight(ix, 0) * (std::norm(sx.g[0][ix]) + std::norm(st.v[ix]));
        } else {
          acc += wt * (std::norm(sx.g[0][0]) + std::norm(st.v[0]) +
                       std::norm(sx.g[0][nx - 1]) + std::norm(st.v[nx - 1]));
        }
      }
      return std::sqrt(acc);
    };
    double gu = gradn(u, rho, false), gv = gradn(v, 1.0, false);
    double lo = std::pow(rho, -0.5) * std::min(1.0, rho) * gu;
    rep.margins.push_back((gv - lo) / std::max(1.0, gu)); // el7
    double gub = gradn(u, rho, true), gvb = gradn(v, 1.0, true);
    double hi = std::pow(rho, -0.5) * std::max(1.0, rho) * gub;
    rep.margins.push_back((hi - gvb) / std::max(1.0, gub)); // el10

    // el8 pointwise via the scaled operator identity on the random medium
    auto med = medium_random_smooth(2, cfg.seed + 3, 0.25);
    auto sm = scale_coefficients(med, rho);
    double step = 1e-6;
    CounterRng rng(cfg.seed, 0x656c38u);
    double worst = 0.0;
    for (int s = 0; s < 40; ++s) {
      Vec x = vec2(rng.uniform(0.1, 0.9), rng.uniform(-0.9, 0.9));
      Vec y = vec2(x[0], rho * x[1]);
      // quadratic test polynomial q with exact derivatives
      double qa = rng.uniform(-1, 1), qb = rng.uniform(-1, 1), qc = rng.uniform(-1, 1);
      auto q_dx = [&](const Vec& z, int i) {
        return i == 0 ? 2.0 * qa * z[0] + qc * z[1] : 2.0 * qb * z[1] + qc * z[0];
      };
      auto q_dxx = [&](int i, int j) {
        if (i == 0 && j == 0) return 2.0 * qa;
        if (i == 1 && j == 1) return 2.0 * qb;
        return qc;
      };
      // reference side: (L q)(y) with y = (x0, rho x1)
      double rhs = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rhs += med.at(y).a[i][j] * q_dxx(i, j);
      for (int j = 0; j < 2; ++j) {
        double divA = med.deriv_at(y, 0, step).a[0][j] + med.deriv_at(y, 1, step).a[1][j];
        rhs += divA * q_dx(y, j);
      }
      // scaled side: L_rho applied to the pulled-back polynomial v(x) = q(x', rho x_n)
      double lhs2 = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double scale = (i == 1 ? rho : 1.0) * (j == 1 ? rho : 1.0);
          lhs2 += sm.scaled.at(x).a[i][j] * q_dxx(i, j) * scale;
        }
      for (int j = 0; j < 2; ++j) {
        double divA =
            sm.scaled.deriv_at(x, 0, step).a[0][j] + sm.scaled.deriv_at(x, 1, step).a[1][j];
        lhs2 += divA * q_dx(y, j) * (j == 1 ? rho : 1.0);
      }
      worst = std::max(worst, std::abs(lhs2 - rhs) / std::max(1.0, std::abs(rhs)));
    }
    rep.margins.push_back(1e-8 - worst); // el8 pointwise identity (FD-step limited)
  }
  pass_if_margins(rep, 1e-12);
  return stamped(rep, cfg, start);
}

inline CheckReport run_l35(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-L3.5";
  rep.anchor = "energy-groenwall-band";
  rep.mode = CheckMode::FittedConstant;
  double delta_bar = 0.5;
  std::vector<double> sup_c;
  for (int level = 0; level < 2; ++level) {
    int nx = level == 0 ? 33 : 49;
    SpaceGrid g(kSquare, nx);
    TimeAxis ta(-cfg.T, cfg.T, 129);
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      auto u = i < 4 ? standing_wave(g, ta, 1 + i % 2, 1 + i / 2)
                     : random_smooth_field(g, ta, cfg.seed + i, 3, true);
      auto med = medium_identity(2);
      auto J = window_J(delta_bar / 2.0, cfg.T);
      double X = bochner_norm(u, 1, SpaceNorm::L2, J);
      double fd_step = 1e-5 * diameter(g.box);
      SpaceTimeField pu(g, ta);
      pu.analytic = make_pu_analytic(med, u.analytic, fd_step);
      double Y = bochner_norm(pu, 1, SpaceNorm::L2, J);
      for (double s : {-1.0, 1.0})
        for (int k = 0; k <= 1; ++k) {
          Slice sl = make_slice(u, s * cfg.T, k, 1);
          Y += slice_space_norm(g, sl, SpaceNorm::GradL2);
        }
      SubBoundary whole = SubBoundary::whole(g.box);
      Y += bochner_norm(u, 1, SpaceNorm::BdL2, J, &whole) +
           bochner_norm(u, 1, SpaceNorm::BdNormalDerivL2, J, &whole);
      double cfit = delta_bar * std::max(0.0, std::log(X / std::max(Y, 1e-300)));
      worst = std::max(worst, cfit);
    }
    sup_c.push_back(worst);
  }
  rep.fitted.present = true;
  rep.fitted.value = sup_c.back();
  rep.fitted.spread = std::abs(sup_c[1] - sup_c[0]) / std::max(sup_c[0], 1e-12);
  rep.convergence.push_back({1.0 / 32, sup_c[0]});
  rep.convergence.push_back({1.0 / 48, sup_c[1]});
  bool stable = sup_c[0] == 0.0 ? sup_c[1] == 0.0 : rep.fitted.spread < 0.2;
  rep.verdict = stable ? Verdict::Pass : Verdict::Fail;
  if (!stable) rep.reason = "fitted Groenwall constant unstable under refinement";
  return stamped(rep, cfg, start);
}

inline CheckReport run_interp(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-P3.2-interp";
  rep.anchor = "(a2)-(a4)";
  rep.mode = CheckMode::ExplicitConstant;
  // eigenfunction equality
  int M = 127;
  double h = 1.0 / (M + 1);
  for (int mode : {1, 3, 9}) {
    std::vector<double> v(M);
    for (int i = 1; i <= M; ++i) v[i - 1] = std::sin(mode * M_PI * i * h);
    auto n = spectral_norms_1d(v, h);
    rep.margins.push_back(1e-10 - std::abs(interpolation_margin(n)));
  }
  // random fields: margins >= 0 and the eps-form of (a3)
  CounterRng rng(cfg.seed, 0x696e7470u);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> v(M);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    auto n = spectral_norms_1d(v, h);
    rep.margins.push_back(interpolation_margin(n));
    double eps = rng.uniform(0.02, 5.0);
    double rhs = 0.5 * (eps * n.h1 + n.hm1 / eps);
    rep.margins.push_back((rhs - n.l2) / std::max(rhs, 1e-300));
  }
  pass_if_margins(rep, 1e-10);
  return stamped(rep, cfg, start);
}

// ---------------- multiplier group ----------------

inline std::vector<SpaceTimeField> dirichlet_family(const SpaceGrid& g, const TimeAxis& ta,
                                                    uint64_t seed, int count) {
  std::vector<SpaceTimeField> fam;
  int idx = 0;
  while (static_cast<int>(fam.size()) < count) {
    if (idx % 3 == 0)
      fam.push_back(standing_wave(g, ta, 1 + idx % 2, 1 + (idx / 2) % 2, 0.3 * idx));
    else
      fam.push_back(random_smooth_field(g, ta, seed + idx, 3, true));
    ++idx;
  }
  return fam;
}

inline CheckReport run_b11(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-B11";
  rep.anchor = "(b11)";
  rep.mode = CheckMode::ExplicitConstant;
  SpaceGrid g(kSquare, 65);
  TimeAxis ta(0, 1, 17);
  auto fam = dirichlet_family(g, ta, cfg.seed, cfg.family_size);
  for (const auto& u : fam) {
    auto r = w_norm_bound(u, vec2(0, 0), 0.37);
    rep.margins.push_back((r.rhs - r.lhs) / std::max({r.rhs, r.lhs, 1e-300}));
  }
  pass_if_margins(rep, 1e-8);
  return stamped(rep, cfg, start);
}

inline CheckReport run_b07(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-B07";
  rep.anchor = "(b07)";
  rep.mode = CheckMode::Identity;
  auto med = medium_identity(2);
  std::vector<double> res, hs;
  for (int n : {65, 129, 257}) {
    SpaceGrid g(kSquare, n);
    auto u = standing_wave(g, TimeAxis(0, 1, n), 1, 1);
    auto d = decompose(u, med, vec2(0, 0), 0.0, 1.0, n);
    res.push_back(d.identity_residual() / d.scale());
    hs.push_back(g.h(0));
    rep.convergence.push_back({g.h(0), res.back()});
  }
  double p1 = std::log(res[0] / res[1]) / std::log(hs[0] / hs[1]);
  double p2 = std::log(res[1] / res[2]) / std::log(hs[1] / hs[2]);
  rep.fitted.present = true;
  rep.fitted.value = std::min(p1, p2);
  rep.margins = {p1 - 1.8, p2 - 1.8};
  // T_B vanishes identically for constant coefficients
  {
    SpaceGrid g(kSquare, 49);
    auto u = standing_wave(g, TimeAxis(0, 1, 49), 2, 1);
    auto d = decompose(u, medium_diagonal(2, 2.0, 0.5), vec2(0, 0), 0.0, 1.0, 49);
    rep.margins.push_back(d.T_B == 0.0 ? 1.0 : -1.0);
  }
  pass_if_margins(rep, 0.0);
  return stamped(rep, cfg, start);
}

inline CheckReport run_twopoint(const CertificateConfig& cfg, int which) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = which == 0 ? "C-B08" : (which == 1 ? "C-B011" : "C-B012");
  rep.anchor = which == 0 ? "(b08)" : (which == 1 ? "(b011)" : "(b012)");
  rep.mode = CheckMode::ExplicitConstant;
  SpaceGrid g(kSquare, 49);
  TimeAxis ta(0, 2, 65);
  auto med = medium_sinusoidal(2, 0.05);
  auto fam = dirichlet_family(g, ta, cfg.seed, cfg.family_size);
  CounterRng rng(cfg.seed, 0x74777074u);
  for (const auto& u : fam) {
    double eps = rng.uniform(0.2, 3.0);
    double dlt = rng.uniform(0.3, 3.0);
    auto r = two_point_energy_bounds(u, med, vec2(0, 0), 0.0, 2.0, eps, dlt, 129);
    rep.margins.push_back(which == 0 ? r.b08_margin : (which == 1 ? r.b011_margin : r.b012_margin));
  }
  pass_if_margins(rep, 1e-8);
  return stamped(rep, cfg, start);
}

inline CheckReport run_observability(const CertificateConfig& cfg, int which) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = which == 0 ? "C-B013" : (which == 1 ? "C-B016" : "C-B018");
  rep.anchor = which == 0 ? "(b013)" : (which == 1 ? "(b016)" : "(b018)");
  rep.mode = CheckMode::ExplicitConstant;
  auto med = cfg.medium == "identity" ? medium_sinusoidal(2, 0.05)
                                      : medium_by_name(cfg.medium, 2, cfg.seed);
  double rho0 = smallness_margin(med, kSquare);
  double cmin = (4.0 + med.kappa) * diameter(kSquare) / std::max(rho0, 1e-300);
  double b = 8.0;
  if (rho0 <= 0.0 || b <= cmin) {
    rep.verdict = Verdict::Skip;
    rep.reason = rho0 <= 0.0 ? "smallness gate closed (rho_0 <= 0)"
                             : "interval too short for the gate";
    return stamped(rep, cfg, start);
  }
  SpaceGrid g(kSquare, 49);
  TimeAxis ta(0, b, 129);
  auto fam = dirichlet_family(g, ta, cfg.seed, std::min(cfg.family_size, 8));
  for (const auto& u : fam) {
    auto r = observability_bound(u, med, vec2(0, 0), 0.0, b, 129);
    if (!r.gate_open) {
      rep.verdict = Verdict::Skip;
      rep.reason = r.gate_reason;
      return stamped(rep, cfg, start);
    }
    rep.margins.push_back(which == 0 ? r.b013_margin : (which == 1 ? r.b016_margin : r.b018_margin));
  }
  pass_if_margins(rep, 1e-8);
  return stamped(rep, cfg, start);
}

inline CheckReport run_pr1(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-PR1";
  rep.anchor = "endpoint-observability";
  rep.mode = CheckMode::FittedConstant;
  bool hard_fail = false;
  auto med = medium_sinusoidal(2, 0.05);
  double rho0 = smallness_margin(med, kSquare);
  double b = 8.0;
  if (rho0 <= 0.0 || b <= (4.0 + med.kappa) * diameter(kSquare) / rho0) {
    rep.verdict = Verdict::Skip;
    rep.reason = "smallness gate closed";
    return stamped(rep, cfg, start);
  }
  std::vector<double> sup_per_level;
  for (int nx : {33, 49}) {
    SpaceGrid g(kSquare, nx);
    TimeAxis ta(0, b, 97);
    auto fam = dirichlet_family(g, ta, cfg.seed, 6);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& u : fam) {
      auto r = observability_bound(u, med, vec2(0, 0), 0.0, b, 97);
      if (r.pr1_C > 0.0) {
        lo = std::min(lo, r.pr1_C);
        hi = std::max(hi, r.pr1_C);
      }
    }
    sup_per_level.push_back(hi);
    rep.convergence.push_back({1.0 / (nx - 1), hi});
    rep.notes.push_back("family spread " + std::to_string(hi / lo));
    if (hi / lo > 10.0) {
      hard_fail = true;
      rep.reason = "pr1 fitted constant spread exceeds 10x";
    }
  }
  rep.fitted.present = true;
  rep.fitted.value = sup_per_level.back();
  rep.fitted.spread =
      std::abs(sup_per_level[1] - sup_per_level[0]) / std::max(sup_per_level[0], 1e-300);
  rep.verdict = (!hard_fail && rep.fitted.spread < 0.2) ? Verdict::Pass : Verdict::Fail;
  if (!rep.passed() && rep.reason.empty())
    rep.reason = "pr1 fitted constant unstable under refinement";
  return stamped(rep, cfg, start);
}

// ---------------- appendix group ----------------

inline CheckReport run_carleman(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-A-Carleman";
  rep.anchor = "(1.3)";
  rep.mode = CheckMode::FittedConstant;
  bool hard_fail = false;
  // interior annulus instance
  {
    Box bigbox(vec2(-3, -3), vec2(3, 3), 2);
    SpaceGrid g(bigbox, 193);
    RadialBump bump;
    bump.r0 = 0.5;
    bump.r1 = 3.0;
    bump.w = 0.5;
    auto v = SpaceTimeField::sampled(g, TimeAxis(0, 1, 2), bump.analytic(), "bump");
    auto res = carleman_ratio_sweep(
        v, medium_random_smooth(2, cfg.seed, 0.15), g,
        [](const Vec& x) {
          double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
          return r > 0.5 && r < 3.0;
        },
        [](const Vec& x) { return 9.0 - (x[0] * x[0] + x[1] * x[1]); },
        [](const Vec& x) { return vec2(-2.0 * x[0], -2.0 * x[1]); }, 1.0,
        {1.0, 2.0, 3.0, 4.0, 6.0, 8.0});
    if (res.psi_critical_point || !res.pass) {
      hard_fail = true;
      rep.reason = "interior sweep failed";
    }
    for (size_t i = 0; i < res.taus.size(); ++i)
      rep.convergence.push_back({res.taus[i], res.log_ratio[i]});
    rep.fitted.present = true;
    rep.fitted.value = res.min_log_ratio;
  }
  // boundary-weight instance: logarithmic weight centered outside the domain
  {
    Vec x0 = vec2(0.5, -0.25);
    double rr = 0.45, rad = 0.35;
    SpaceGrid gs(kSquare, 129);
    RadialBump b2;
    b2.center = x0;
    b2.r0 = 0.0;
    b2.r1 = rr + rad;
    b2.w = 0.25;
    auto v2 = SpaceTimeField::sampled(gs, TimeAxis(0, 1, 2), b2.analytic(), "bdry-bump");
    SubBoundary bottom;
    bottom.faces.push_back(BoundaryFace{1, 0, 0.0, 1.0});
    auto res = carleman_ratio_sweep(
        v2, medium_identity(2), gs,
        [&](const Vec& x) { return dist(x, x0, 2) < rr + rad; },
        [&](const Vec& x) {
          double d2 = (x[0] - x0[0]) * (x[0] - x0[0]) + (x[1] - x0[1]) * (x[1] - x0[1]);
          return std::log((rr + rad) * (rr + rad) / d2);
        },
        [&](const Vec& x) {
          double d2 = (x[0] - x0[0]) * (x[0] - x0[0]) + (x[1] - x0[1]) * (x[1] - x0[1]);
          return vec2(-2.0 * (x[0] - x0[0]) / d2, -2.0 * (x[1] - x0[1]) / d2);
        },
        1.0, {1.0, 2.0, 4.0, 8.0}, &bottom);
    if (res.psi_critical_point || !res.pass) {
      hard_fail = true;
      rep.reason = "boundary-weight sweep failed";
    }
    rep.notes.push_back("boundary-weight min log ratio " + std::to_string(res.min_log_ratio));
  }
  rep.verdict = hard_fail ? Verdict::Fail : Verdict::Pass;
  return stamped(rep, cfg, start);
}

inline CheckReport run_cacc(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-A-Cacc";
  rep.anchor = "(1.4)";
  rep.mode = CheckMode::FittedConstant;
  TimeAxis ta(0, 1, 2);
  std::vector<double> mins;
  for (int nx : {129, 193}) {
    SpaceGrid g(kSquare, nx);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int m = 1; m <= 6; ++m) {
      auto u = harmonic_polynomial(g, ta, m, m % 2 == 1, vec2(-0.2, 1.1));
      double c = caccioppoli_ratio(u, medium_identity(2), vec2(0.5, 0.5), 0.15);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    auto med = medium_sinusoidal(2, 0.1);
    for (uint64_t s = 1; s <= 4; ++s) {
      auto u = random_smooth_field(g, ta, cfg.seed + s, 2, false);
      double c = caccioppoli_ratio(u, med, vec2(0.5, 0.5), 0.15);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    mins.push_back(lo);
    rep.convergence.push_back({1.0 / (nx - 1), lo});
    rep.notes.push_back("admissible C in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  rep.fitted.present = true;
  rep.fitted.value = mins.back();
  rep.fitted.spread = std::abs(mins[1] - mins[0]) / std::max(mins[0], 1e-300);
  rep.verdict = (mins.back() > 0.0 && rep.fitted.spread < 0.2) ? Verdict::Pass : Verdict::Fail;
  if (!rep.passed()) rep.reason = "Caccioppoli fitted constant unstable";
  return stamped(rep, cfg, start);
}

inline CheckReport run_three_ball(const CertificateConfig& cfg, bool gradient) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = gradient ? "C-A-3BG" : "C-A-3B";
  rep.anchor = gradient ? "three-ball-gradient" : "three-ball";
  rep.mode = CheckMode::FittedConstant;
  SpaceGrid g(kSquare, 257);
  TimeAxis ta(0, 1, 2);
  std::vector<ThreeBallInstance> fam;
  auto id = medium_identity(2);
  for (int m = 1; m <= 5; ++m) {
    fam.push_back({harmonic_polynomial(g, ta, m, false, vec2(-0.1, -0.15)), id});
    fam.push_back({harmonic_polynomial(g, ta, m, true, vec2(1.1, 1.2)), id});
  }
  auto med = medium_sinusoidal(2, 0.1);
  for (uint64_t s = 3; s <= 5; ++s)
    fam.push_back({random_smooth_field(g, ta, cfg.seed + s, 2, false), med});
  auto res = three_ball_exponent(fam, vec2(0.45, 0.55), 0.12, 1.5, 2.0, 3.5, gradient);
  rep.fitted.present = true;
  rep.fitted.value = res.gamma_hat;
  rep.notes.push_back("C_hat " + std::to_string(res.C_hat) + ", instances " +
                      std::to_string(res.instances_used) + ", proof reference gamma(lambda=1) " +
                      std::to_string(res.gamma_reference()));
  bool ok = res.gamma_hat > 0.01 && res.gamma_hat < 0.99 && std::isfinite(res.C_hat) &&
            res.instances_used >= 10;
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  if (!ok) rep.reason = "three-ball exponent estimation outside the expected window";
  return stamped(rep, cfg, start);
}

inline CheckReport run_pw(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-A-PW";
  rep.anchor = "(1.16)";
  rep.mode = CheckMode::ExplicitConstant;
  auto res = poincare_wirtinger_check(kSquare, 50, cfg.seed, 97, 0.05);
  rep.margins.push_back(res.worst_margin);
  rep.notes.push_back("aleph = 2 sqrt(2)/pi over " + std::to_string(res.trials) + " trials");
  rep.verdict = res.violations == 0 ? Verdict::Pass : Verdict::Fail;
  if (!rep.passed()) rep.reason = std::to_string(res.violations) + " violations";
  return stamped(rep, cfg, start);
}

inline CheckReport run_seq(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-A-SEQ";
  rep.anchor = "(1.20)";
  rep.mode = CheckMode::ExplicitConstant;
  auto res = sequence_lemma_check(cfg.seed, 10000, 40, 1e-12);
  rep.margins.push_back(res.worst_margin);
  rep.verdict = res.violations == 0 ? Verdict::Pass : Verdict::Fail;
  if (!rep.passed()) rep.reason = std::to_string(res.violations) + " violations";
  return stamped(rep, cfg, start);
}

inline CheckReport run_chain(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-A-CHAIN";
  rep.anchor = "(1.22)";
  rep.mode = CheckMode::Identity;
  Box big(vec2(-40, -40), vec2(40, 40), 2);
  CounterRng rng(cfg.seed, 0x636861696eu);
  for (int t = 0; t < 100; ++t) {
    double theta = rng.uniform(0.01, M_PI / 2 - 0.01);
    double mu = (3.0 - 2.0 * std::sin(theta)) / (3.0 - std::sin(theta));
    double algebra = std::abs((1.0 - mu) - (2.0 - mu) * std::sin(theta) / 3.0);
    rep.margins.push_back(1e-12 - algebra);
    auto chain = boundary_ball_chain(vec2(0, 0), theta, 1.0, vec2(0, 1), 6, big);
    for (size_t k = 0; k + 1 < chain.balls.size(); ++k) {
      double step = dist(chain.balls[k].center, chain.balls[k + 1].center, 2);
      double incl = 2.0 * chain.balls[k].radius - (step + chain.balls[k + 1].radius);
      rep.margins.push_back(1e-12 * chain.balls[k].radius - std::abs(incl));
    }
  }
  pass_if_margins(rep, 0.0);
  return stamped(rep, cfg, start);
}

inline CheckReport run_l13(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-A-L1.3";
  rep.anchor = "(1.32)";
  rep.mode = CheckMode::FittedConstant;
  TimeAxis ta(0, 1, 2);
  std::vector<double> mins;
  for (int nx : {97, 145}) {
    SpaceGrid g(kSquare, nx);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int m = 1; m <= 5; ++m) {
      auto u = harmonic_polynomial(g, ta, m, m % 2 == 0, vec2(-0.3, 1.2));
      double c = h1_trace_ratio(u, medium_identity(2));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    mins.push_back(lo);
    rep.convergence.push_back({1.0 / (nx - 1), lo});
    rep.notes.push_back("admissible C in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  rep.fitted.present = true;
  rep.fitted.value = mins.back();
  rep.fitted.spread = std::abs(mins[1] - mins[0]) / std::max(mins[0], 1e-300);
  rep.verdict = (mins.back() > 0.0 && rep.fitted.spread < 0.2) ? Verdict::Pass : Verdict::Fail;
  if (!rep.passed()) rep.reason = "H^{1/2}-surrogate trace constant unstable under refinement";
  return stamped(rep, cfg, start);
}

inline CheckReport run_hadamard(const CertificateConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = "C-A-HADAMARD";
  rep.anchor = "phi-modulus-domination";
  rep.mode = CheckMode::RateFit;
  Box dom(vec2(0, 0), vec2(M_PI, 1.0), 2);
  TimeAxis ta(0, 1, 2);
  std::vector<std::pair<double, double>> pts;
  for (int k : {4, 8, 16, 32, 64}) {
    int nx = std::max(129, 12 * k + 1);
    SpaceGrid g(dom, nx, 129);
    auto u = hadamard_field(g, ta, k);
    Slice s = make_slice(u, 0.0, 0, 1);
    double h1 = slice_space_norm(g, s, SpaceNorm::H1);
    double supv = 0.0, supg = 0.0;
    for (int iy = 0; iy < g.npts[1]; ++iy)
      for (int ix = 0; ix < g.npts[0]; ++ix) {
        int id = g.index(ix, iy);
        supv = std::max(supv, std::abs(s.v[id]));
        supg = std::max(supg, std::max(std::abs(s.g[0][id]), std::abs(s.g[1][id])));
      }
    double c1a = supv + supg;
    SubBoundary bottom;
    bottom.faces.push_back(BoundaryFace{1, 0, 0.0, M_PI});
    double data = slice_space_norm(g, s, SpaceNorm::BdNormalDerivL2, &bottom) +
                  slice_space_norm(g, s, SpaceNorm::BdL2, &bottom);
    pts.push_back({data / c1a, h1 / c1a});
  }
  auto fit = hadamard_phi_fit(pts);
  rep.fitted.present = true;
  rep.fitted.value = fit.beta_hat;
  rep.notes.push_back("Phi breakpoint parameter c " + std::to_string(fit.c));
  rep.verdict = fit.pass ? Verdict::Pass : Verdict::Fail;
  if (!fit.pass) rep.reason = "no positive beta dominates the Hadamard points";
  return stamped(rep, cfg, start);
}

// ---------------- assembly group ----------------

inline CheckReport run_assembly(const CertificateConfig& cfg, bool main_theorem) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.id = main_theorem ? "C-ASSEMBLY-MAIN" : "C-ASSEMBLY-P3.1";
  rep.anchor = main_theorem ? "final-stability-bound" : "center-time-bound";
  rep.mode = CheckMode::ExplicitConstant;
  bool hard_fail = false;
  double delta = 0.5, s = cfg.assembly_s, c = cfg.assembly_c;
  SpaceGrid g(kSquare, 33);
  TimeAxis ta(-cfg.T, cfg.T, 129);
  auto med = medium_sinusoidal(2, 0.05);
  FunctionalParams fp;
  fp.delta = delta;
  fp.T = cfg.T;
  fp.alpha = cfg.alpha;
  auto sel = parameter_selection(delta, cfg.T, 1.0, c, s);
  rep.notes.push_back("lambda = 16 delta^-16 / T^2 = " + std::to_string(sel.lambda));

  int instances = 3;
  for (int i = 0; i < instances; ++i) {
    auto u = i == 0 ? standing_wave(g, ta, 1, 1) : random_smooth_field(g, ta, cfg.seed + i, 3, true);
    auto F = compute_functionals(u, med, fp);
    double lhs, data;
    if (main_theorem) {
      lhs = bochner_norm(u, 0, SpaceNorm::H1, window_full(cfg.T));
      data = F.D + F.Dfrak;
    } else {
      Slice sl = make_slice(u, 0.0, 0, 1);
      lhs = slice_space_norm(g, sl, SpaceNorm::H1);
      data = bochner_norm(u, 0, SpaceNorm::L2, window_full(cfg.T)) + F.Dhat +
             bochner_norm(u, 1, SpaceNorm::L2, window_J(delta / 2.0, cfg.T));
    }
    int exp_k = main_theorem ? 3 : 2;
    double first_term_exp = main_theorem ? s : 2.0; // delta^s vs delta^2
    auto res = assemble_final_bound(exp_k, lhs, F.N, data, delta,
                                    first_term_exp, c, 0.05, 0.9);
    rep.margins.push_back(res.lhs_dominated ? 1.0 : -1.0);
    if (i == 0) {
      rep.notes.push_back(std::string("vacuous: ") + (res.vacuous ? "yes" : "no") +
                          ", RHS = " + res.rhs.describe() +
                          ", non-vacuity delta >= " + std::to_string(res.nonvacuity_delta));
      if (main_theorem) {
        // the e_2 path (smallness gate open) must be strictly smaller
        auto res2 = assemble_final_bound(2, lhs, F.N, F.Dtilde_bar, delta, s, c, 0.05, 0.9);
        bool smaller = compare(res2.rhs, res.rhs) < 0;
        rep.margins.push_back(smaller ? 1.0 : -1.0);
        rep.notes.push_back(std::string("e2-path RHS = ") + res2.rhs.describe());
        if (!res.vacuous) {
          hard_fail = true;
          rep.reason = "expected e_3 saturation at delta = 0.5 was not flagged";
        }
      }
      // data terms forced to zero: the genuinely quantitative branch
      auto rz = assemble_final_bound(exp_k, lhs, F.N, 0.0, delta, first_term_exp, c, 0.05, 0.9);
      rep.margins.push_back(rz.lhs_dominated ? 1.0 : -1.0);
      rep.margins.push_back(rz.vacuous ? -1.0 : 1.0);
    }
  }
  pass_if_margins(rep, 0.0);
  if (hard_fail) rep.verdict = Verdict::Fail;
  return stamped(rep, cfg, start);
}

} // namespace cert_detail

inline const std::vector<CertificateRow>& certificate_registry() {
  static const std::vector<CertificateRow> rows = [] {
    using namespace cert_detail;
    std::vector<CertificateRow> r;
    auto add = [&](std::string id, std::string anchor, CheckMode m, std::string group,
                   std::function<CheckReport(const CertificateConfig&)> fn) {
      r.push_back({std::move(id), std::move(anchor), m, std::move(group), std::move(fn)});
    };
    add("C-L3.1a", "(e1)", CheckMode::ExplicitConstant, "fbi",
        [](const CertificateConfig& c) { return run_l31(c, false); });
    add("C-L3.1b", "(e1+)", CheckMode::ExplicitConstant, "fbi",
        [](const CertificateConfig& c) { return run_l31(c, true); });
    add("C-L3.2k", "(e3+)", CheckMode::ExplicitConstant, "fbi",
        [](const CertificateConfig& c) { return run_l32(c, false); });
    add("C-L3.2g", "(e3)", CheckMode::ExplicitConstant, "fbi",
        [](const CertificateConfig& c) { return run_l32(c, true); });
    add("C-L3.3", "(e4)", CheckMode::ExplicitConstant, "fbi", run_l33);
    add("C-L3.4", "(e5)", CheckMode::FittedConstant, "fbi", run_l34);
    add("C-EL-scale", "(el6)-(el10)", CheckMode::Identity, "fbi", run_el_scale);
    add("C-L3.5", "energy-groenwall-band", CheckMode::FittedConstant, "fbi", run_l35);
    add("C-P3.2-interp", "(a2)-(a4)", CheckMode::ExplicitConstant, "fbi", run_interp);
    add("C-B11", "(b11)", CheckMode::ExplicitConstant, "multiplier", run_b11);
    add("C-B07", "(b07)", CheckMode::Identity, "multiplier", run_b07);
    add("C-B08", "(b08)", CheckMode::ExplicitConstant, "multiplier",
        [](const CertificateConfig& c) { return run_twopoint(c, 0); });
    add("C-B011", "(b011)", CheckMode::ExplicitConstant, "multiplier",
        [](const CertificateConfig& c) { return run_twopoint(c, 1); });
    add("C-B012", "(b012)", CheckMode::ExplicitConstant, "multiplier",
        [](const CertificateConfig& c) { return run_twopoint(c, 2); });
    add("C-B013", "(b013)", CheckMode::ExplicitConstant, "multiplier",
        [](const CertificateConfig& c) { return run_observability(c, 0); });
    add("C-B016", "(b016)", CheckMode::ExplicitConstant, "multiplier",
        [](const CertificateConfig& c) { return run_observability(c, 1); });
    add("C-B018", "(b018)", CheckMode::ExplicitConstant, "multiplier",
        [](const CertificateConfig& c) { return run_observability(c, 2); });
    add("C-PR1", "endpoint-observability", CheckMode::FittedConstant, "multiplier", run_pr1);
    add("C-A-Carleman", "(1.3)", CheckMode::FittedConstant, "appendix", run_carleman);
    add("C-A-Cacc", "(1.4)", CheckMode::FittedConstant, "appendix", run_cacc);
    add("C-A-3B", "three-ball", CheckMode::FittedConstant, "appendix",
        [](const CertificateConfig& c) { return run_three_ball(c, false); });
    add("C-A-3BG", "three-ball-gradient", CheckMode::FittedConstant, "appendix",
        [](const CertificateConfig& c) { return run_three_ball(c, true); });
    add("C-A-PW", "(1.16)", CheckMode::ExplicitConstant, "appendix", run_pw);
    add("C-A-SEQ", "(1.20)", CheckMode::ExplicitConstant, "appendix", run_seq);
    add("C-A-CHAIN", "(1.22)", CheckMode::Identity, "appendix", run_chain);
    add("C-A-L1.3", "(1.32)", CheckMode::FittedConstant, "appendix", run_l13);
    add("C-A-HADAMARD", "phi-modulus-domination", CheckMode::RateFit, "appendix", run_hadamard);
    add("C-ASSEMBLY-P3.1", "center-time-bound", CheckMode::ExplicitConstant, "assembly",
        [](const CertificateConfig& c) { return run_assembly(c, false); });
    add("C-ASSEMBLY-MAIN", "final-stability-bound", CheckMode::ExplicitConstant, "assembly",
        [](const CertificateConfig& c) { return run_assembly(c, true); });
    return r;
  }();
  return rows;
}

inline CheckReport run_certificate(const std::string& id, const CertificateConfig& cfg) {
  for (const auto& row : certificate_registry())
    if (row.id == id) return row.run(cfg);
  throw std::invalid_argument("unknown certificate id: " + id);
}

} // namespace uclab

#endif
