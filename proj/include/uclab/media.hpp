#ifndef UCLAB_MEDIA_HPP
#define UCLAB_MEDIA_HPP

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "uclab/geometry.hpp"
#include "uclab/report.hpp"
#include "uclab/rng.hpp"

namespace uclab {

// Symmetric n x n matrix, n <= 2, stored dense in the 2x2 slots.
struct SymMat {
  double a[2][2] = {{1.0, 0.0}, {0.0, 1.0}};

  static SymMat identity() { return SymMat{}; }
  static SymMat diag(double d0, double d1) {
    SymMat m;
    m.a[0][0] = d0;
    m.a[1][1] = d1;
    return m;
  }
  double quad(const Vec& xi, int dim) const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) s += a[i][j] * xi[i] * xi[j];
    return s;
  }
  Vec mul(const Vec& xi, int dim) const {
    Vec r{0.0, 0.0};
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) r[i] += a[i][j] * xi[j];
    return r;
  }
};

// Coefficient field A(x) with declared ellipticity kappa >= 1 and gradient
// bound varkappa > 0. The declarations are validated by sampling, not
// computed extrema.
struct AnisotropicMedium {
  std::function<SymMat(const Vec&)> eval;
  std::function<SymMat(const Vec&, int)> deriv; // d A / d x_k, optional
  double kappa = 1.0;
  double varkappa = 0.01;
  int dim = 2;
  std::string name = "medium";

  SymMat at(const Vec& x) const { return eval(x); }

  bool has_analytic_deriv() const { return static_cast<bool>(deriv); }

  // central finite difference fallback, step scaled by the domain diameter
  SymMat deriv_at(const Vec& x, int k, double fd_step) const {
    if (deriv) return deriv(x, k);
    Vec xp = x, xm = x;
    xp[k] += fd_step;
    xm[k] -= fd_step;
    SymMat p = eval(xp), m = eval(xm), r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.a[i][j] = (p.a[i][j] - m.a[i][j]) / (2.0 * fd_step);
    return r;
  }
};

inline Vec unit_direction(int dim, double angle01) {
  if (dim == 1) return vec1(angle01 < 0.5 ? 1.0 : -1.0);
  double phi = 2.0 * M_PI * angle01;
  return vec2(std::cos(phi), std::sin(phi));
}

// Checks kappa^-1 |xi|^2 <= A(x) xi.xi <= kappa |xi|^2 at quasi-random (x, xi)
// with |xi| = 1, plus symmetry of the sampled matrices.
inline CheckReport verify_ellipticity(const AnisotropicMedium& med, const Box& domain,
                                      int sample_count) {
  if (sample_count < 1) throw std::invalid_argument("verify_ellipticity: sample_count >= 1");
  CheckReport rep;
  rep.id = "media-ellipticity";
  rep.anchor = "(main1)";
  rep.mode = CheckMode::ExplicitConstant;
  QuasiRandom qr;
  double lower = std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  double sym = 0.0;
  double pt[3];
  for (int s = 0; s < sample_count; ++s) {
    qr.point(domain.dim + 1, pt);
    Vec x = domain.lo;
    for (int i = 0; i < domain.dim; ++i) x[i] += pt[i] * domain.side(i);
    Vec xi = unit_direction(domain.dim, pt[domain.dim]);
    SymMat A = med.at(x);
    sym = std::max(sym, std::abs(A.a[0][1] - A.a[1][0]));
    double q = A.quad(xi, domain.dim);
    lower = std::min(lower, q - 1.0 / med.kappa);
    upper = std::min(upper, med.kappa - q);
  }
  rep.margins = {lower, upper};
  rep.notes.push_back("symmetry defect " + std::to_string(sym));
  bool ok = lower >= -1e-12 && upper >= -1e-12 && sym <= 1e-12;
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  if (!ok) rep.reason = "ellipticity or symmetry violated at a sample";
  return rep;
}

// Checks sum_k | sum_ij d_k a^ij xi_i xi_j | <= varkappa |xi|^2 by sampling.
inline CheckReport verify_gradient_bound(const AnisotropicMedium& med, const Box& domain,
                                         int sample_count) {
  CheckReport rep;
  rep.id = "media-gradient-bound";
  rep.anchor = "(main2)";
  rep.mode = CheckMode::ExplicitConstant;
  QuasiRandom qr;
  double worst = std::numeric_limits<double>::infinity();
  double fd_step = 1e-5 * diameter(domain);
  double pt[3];
  for (int s = 0; s < sample_count; ++s) {
    qr.point(domain.dim + 1, pt);
    Vec x = domain.lo;
    for (int i = 0; i < domain.dim; ++i) {
      // keep the FD stencil inside the domain
      double margin = 2.0 * fd_step / domain.side(i);
      x[i] += (margin + pt[i] * (1.0 - 2.0 * margin)) * domain.side(i);
    }
    Vec xi = unit_direction(domain.dim, pt[domain.dim]);
    double acc = 0.0;
    for (int k = 0; k < domain.dim; ++k) acc += std::abs(med.deriv_at(x, k, fd_step).quad(xi, domain.dim));
    worst = std::min(worst, med.varkappa - acc);
  }
  rep.margins = {worst};
  rep.verdict = worst >= -1e-10 ? Verdict::Pass : Verdict::Fail;
  if (!rep.passed()) rep.reason = "gradient bound violated at a sample";
  return rep;
}

// Anisotropic rescaling A_rho: the last coordinate is
// compressed by rho, with rows/columns touching it scaled by 1/rho, 1/rho^2.
struct ScaledMedium {
  AnisotropicMedium base;
  double rho = 1.0;
  AnisotropicMedium scaled;
};

inline ScaledMedium scale_coefficients(const AnisotropicMedium& med, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("scale_coefficients: rho > 0 required");
  ScaledMedium sm;
  sm.base = med;
  sm.rho = rho;
  AnisotropicMedium out = med;
  out.name = med.name + "_rho";
  int dim = med.dim;
  int last = dim - 1;
  auto base_eval = med.eval;
  out.eval = [base_eval, rho, dim, last](const Vec& x) {
    Vec y = x;
    y[last] *= rho;
    SymMat A = base_eval(y), R;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double s = 1.0;
        if (i == last) s /= rho;
        if (j == last) s /= rho;
        R.a[i][j] = A.a[i][j] * s;
      }
    return R;
  };
  if (med.deriv) {
    auto base_deriv = med.deriv;
    out.deriv = [base_deriv, rho, dim, last](const Vec& x, int k) {
      Vec y = x;
      y[last] *= rho;
      SymMat D = base_deriv(y, k), R;
      double chain = (k == last) ? rho : 1.0; // d/dx_n of A(x', rho x_n)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          double s = chain;
          if (i == last) s /= rho;
          if (j == last) s /= rho;
          R.a[i][j] = D.a[i][j] * s;
        }
      return R;
    };
  }
  sm.scaled = out;
  return sm;
}

// rho_0 = 1 - kappa varkappa d_0; positive sign opens the multiplier-method
// gate.
inline double smallness_margin(const AnisotropicMedium& med, const Box& domain) {
  return 1.0 - med.kappa * med.varkappa * diameter(domain);
}

// --- built-in catalog --------------------------------------------------------

inline AnisotropicMedium medium_identity(int dim, double declared_varkappa = 0.01) {
  AnisotropicMedium m;
  m.dim = dim;
  m.kappa = 1.0;
  m.varkappa = declared_varkappa;
  m.name = "identity";
  m.eval = [](const Vec&) { return SymMat::identity(); };
  m.deriv = [](const Vec&, int) { return SymMat::diag(0.0, 0.0); };
  return m;
}

inline AnisotropicMedium medium_diagonal(int dim, double d0, double d1,
                                         double declared_varkappa = 0.01) {
  AnisotropicMedium m;
  m.dim = dim;
  m.kappa = std::max({d0, 1.0 / d0, dim == 2 ? d1 : 1.0, dim == 2 ? 1.0 / d1 : 1.0});
  m.varkappa = declared_varkappa;
  m.name = "diagonal";
  m.eval = [d0, d1](const Vec&) { return SymMat::diag(d0, d1); };
  m.deriv = [](const Vec&, int) { return SymMat::diag(0.0, 0.0); };
  return m;
}

// A(x) = (1 + eps sin(x_1)) I
inline AnisotropicMedium medium_sinusoidal(int dim, double eps) {
  AnisotropicMedium m;
  m.dim = dim;
  m.kappa = 1.0 / (1.0 - eps);
  m.varkappa = eps;
  m.name = "sinusoidal-perturbation";
  m.eval = [eps, dim](const Vec& x) {
    double v = 1.0 + eps * std::sin(x[0]);
    return dim == 2 ? SymMat::diag(v, v) : SymMat::diag(v, 1.0);
  };
  m.deriv = [eps, dim](const Vec& x, int k) {
    if (k != 0) return SymMat::diag(0.0, 0.0);
    double v = eps * std::cos(x[0]);
    return dim == 2 ? SymMat::diag(v, v) : SymMat::diag(v, 0.0);
  };
  return m;
}

// I plus a few random smooth symmetric trig perturbations; total perturbation
// strength 'amp' keeps the field uniformly elliptic.
inline AnisotropicMedium medium_random_smooth(int dim, uint64_t seed, double amp = 0.2,
                                              int nmodes = 3) {
  struct Mode {
    double c[3]; // coefficients for (0,0), (1,1), (0,1)
    double k[2];
    double phase;
  };
  std::vector<Mode> modes(nmodes);
  CounterRng rng(seed, 0x6d656469u);
  double budget = 0.0;
  for (auto& mo : modes) {
    mo.c[0] = rng.uniform(-1.0, 1.0);
    mo.c[1] = dim == 2 ? rng.uniform(-1.0, 1.0) : 0.0;
    mo.c[2] = dim == 2 ? rng.uniform(-0.5, 0.5) : 0.0;
    mo.k[0] = rng.uniform_int(1, 3) * 1.0;
    mo.k[1] = dim == 2 ? rng.uniform_int(1, 3) * 1.0 : 0.0;
    mo.phase = rng.uniform(0.0, 2.0 * M_PI);
    budget += std::abs(mo.c[0]) + std::abs(mo.c[1]) + 2.0 * std::abs(mo.c[2]);
  }
  double scale = amp / std::max(budget, 1e-12);
  double kmax = 0.0, dbound = 0.0;
  for (auto& mo : modes) {
    for (double& c : mo.c) c *= scale;
    double knorm = std::sqrt(mo.k[0] * mo.k[0] + mo.k[1] * mo.k[1]);
    kmax = std::max(kmax, knorm);
    dbound += (std::abs(mo.c[0]) + std::abs(mo.c[1]) + 2.0 * std::abs(mo.c[2])) * knorm * 2.0;
  }
  AnisotropicMedium m;
  m.dim = dim;
  m.kappa = 1.0 / (1.0 - amp);
  m.varkappa = std::max(dbound, 1e-6);
  m.name = "random-smooth";
  m.eval = [modes, dim](const Vec& x) {
    SymMat A = SymMat::identity();
    if (dim == 1) A.a[1][1] = 1.0;
    for (const auto& mo : modes) {
      double s = std::sin(mo.k[0] * x[0] + mo.k[1] * x[1] + mo.phase);
      A.a[0][0] += mo.c[0] * s;
      A.a[1][1] += mo.c[1] * s;
      A.a[0][1] += mo.c[2] * s;
      A.a[1][0] += mo.c[2] * s;
    }
    return A;
  };
  m.deriv = [modes, dim](const Vec& x, int k) {
    SymMat D = SymMat::diag(0.0, 0.0);
    for (const auto& mo : modes) {
      double c = std::cos(mo.k[0] * x[0] + mo.k[1] * x[1] + mo.phase) * mo.k[k];
      D.a[0][0] += mo.c[0] * c;
      D.a[1][1] += mo.c[1] * c;
      D.a[0][1] += mo.c[2] * c;
      D.a[1][0] += mo.c[2] * c;
    }
    return D;
  };
  return m;
}

inline AnisotropicMedium medium_by_name(const std::string& name, int dim, uint64_t seed) {
  if (name == "identity") return medium_identity(dim);
  if (name == "diagonal") return medium_diagonal(dim, 2.0, 0.5);
  if (name == "sinusoidal-perturbation") return medium_sinusoidal(dim, 0.05);
  if (name == "random-smooth") return medium_random_smooth(dim, seed);
  throw std::invalid_argument("unknown medium: " + name);
}

} // namespace uclab

#endif
