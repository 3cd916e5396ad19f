#ifndef UCLAB_FAMILIES_HPP
#define UCLAB_FAMILIES_HPP

#include <cmath>
#include <string>
#include <vector>

#include "uclab/cutoff.hpp"
#include "uclab/field.hpp"
#include "uclab/rng.hpp"

namespace uclab {

// --- elementary mode builders --------------------------------------------------

// S(x) = sin(kx (x - x0)) or cos(...), tensorized over the active axes
inline SpaceMode trig_space_mode(double kx, double ky, double phx, double phy, int dim,
                                 double amp = 1.0) {
  auto fx = [kx, phx](double x, int d) {
    switch (d % 4) {
      case 0: return std::sin(kx * x + phx);
      case 1: return kx * std::cos(kx * x + phx);
      case 2: return -kx * kx * std::sin(kx * x + phx);
      default: return -kx * kx * kx * std::cos(kx * x + phx);
    }
  };
  auto fy = [ky, phy, dim](double y, int d) {
    if (dim == 1) return d == 0 ? 1.0 : 0.0;
    switch (d % 4) {
      case 0: return std::sin(ky * y + phy);
      case 1: return ky * std::cos(ky * y + phy);
      case 2: return -ky * ky * std::sin(ky * y + phy);
      default: return -ky * ky * ky * std::cos(ky * y + phy);
    }
  };
  SpaceMode m;
  m.v = [fx, fy, amp](const Vec& x) { return cplx(amp * fx(x[0], 0) * fy(x[1], 0)); };
  m.d = [fx, fy, amp](const Vec& x, int i) {
    return cplx(amp * (i == 0 ? fx(x[0], 1) * fy(x[1], 0) : fx(x[0], 0) * fy(x[1], 1)));
  };
  m.dd = [fx, fy, amp](const Vec& x, int i, int j) {
    if (i == j)
      return cplx(amp * (i == 0 ? fx(x[0], 2) * fy(x[1], 0) : fx(x[0], 0) * fy(x[1], 2)));
    return cplx(amp * fx(x[0], 1) * fy(x[1], 1));
  };
  return m;
}

inline TimeMode cos_time_mode(double omega, double phase = 0.0) {
  TimeMode g;
  g.d = [omega, phase](double t, int k) {
    double a = omega * t + phase;
    double s = std::pow(omega, k);
    switch (k % 4) {
      case 0: return cplx(s * std::cos(a));
      case 1: return cplx(-s * std::sin(a));
      case 2: return cplx(-s * std::cos(a));
      default: return cplx(s * std::sin(a));
    }
  };
  return g;
}

inline TimeMode exp_i_time_mode(double omega) {
  TimeMode g;
  g.d = [omega](double t, int k) {
    return std::pow(cplx(0.0, omega), k) * std::exp(cplx(0.0, omega * t));
  };
  return g;
}

inline TimeMode const_time_mode() {
  TimeMode g;
  g.d = [](double, int k) { return cplx(k == 0 ? 1.0 : 0.0); };
  return g;
}

// --- named families -------------------------------------------------------------

// Dirichlet standing wave sin(k1 pi x) sin(k2 pi y) cos(omega t + phase),
// omega = pi sqrt(k1^2 + k2^2): an exact wave solution for A = I on the unit box.
inline SpaceTimeField standing_wave(const SpaceGrid& g, const TimeAxis& ta, int k1, int k2,
                                    double phase = 0.0, double amp = 1.0) {
  int dim = g.dim();
  double lx = g.box.side(0), ly = dim == 2 ? g.box.side(1) : 1.0;
  double kx = k1 * M_PI / lx, ky = dim == 2 ? k2 * M_PI / ly : 0.0;
  double omega = std::sqrt(kx * kx + ky * ky);
  ModeSum ms;
  ms.add(trig_space_mode(kx, ky, -kx * g.box.lo[0], -ky * g.box.lo[1], dim, amp),
         cos_time_mode(omega, phase));
  auto f = SpaceTimeField::sampled(g, ta, ms.build(), "standing-wave-" + std::to_string(k1) +
                                                          "-" + std::to_string(k2));
  return f;
}

// travelling plane wave sin(k . x - omega t + phase) as two separable modes
inline SpaceTimeField travelling_wave(const SpaceGrid& g, const TimeAxis& ta, double kx,
                                      double ky, double omega, double phase = 0.0) {
  int dim = g.dim();
  ModeSum ms;
  // sin(kx x + ky y) cos(omega t - phase) - cos(kx x + ky y) sin(omega t - phase)
  ms.add(trig_space_mode(kx, ky, 0.0, 0.0, dim), cos_time_mode(omega, -phase));
  ms.add(trig_space_mode(kx, ky, M_PI / 2, 0.0, dim, -1.0),
         cos_time_mode(omega, -phase + M_PI / 2));
  return SpaceTimeField::sampled(g, ta, ms.build(), "travelling-wave");
}

// harmonic polynomial Re/Im (z - z0)^m as a static spatial field
inline SpaceTimeField harmonic_polynomial(const SpaceGrid& g, const TimeAxis& ta, int m,
                                          bool imaginary_part, Vec center = {0.0, 0.0}) {
  Analytic a;
  auto zpow = [m, center](const Vec& x, int dx, int dy) {
    // derivative of (z)^m: d^k/dz^k with z = (x-cx) + i (y-cy); mixed partials
    // via d/dx = d/dz, d/dy = i d/dz
    cplx z(x[0] - center[0], x[1] - center[1]);
    int k = dx + dy;
    double coef = 1.0;
    for (int j = 0; j < k; ++j) coef *= (m - j);
    if (m - k < 0) return cplx(0.0);
    cplx v = coef * std::pow(z, m - k);
    for (int j = 0; j < dy; ++j) v *= cplx(0.0, 1.0);
    return v;
  };
  bool im = imaginary_part;
  auto part = [im](cplx v) { return cplx(im ? v.imag() : v.real()); };
  a.value = [zpow, part](const Vec& x, double) { return part(zpow(x, 0, 0)); };
  a.dx = [zpow, part](const Vec& x, double, int i) {
    return part(i == 0 ? zpow(x, 1, 0) : zpow(x, 0, 1));
  };
  a.dxx = [zpow, part](const Vec& x, double, int i, int j) {
    if (i == 0 && j == 0) return part(zpow(x, 2, 0));
    if (i == 1 && j == 1) return part(zpow(x, 0, 2));
    return part(zpow(x, 1, 1));
  };
  a.dt = [](const Vec&, double, int) { return cplx(0.0); };
  a.dxdt = [](const Vec&, double, int, int) { return cplx(0.0); };
  a.dxxdt = [](const Vec&, double, int, int, int) { return cplx(0.0); };
  return SpaceTimeField::sampled(g, ta, a,
                                 std::string(imaginary_part ? "Im" : "Re") + "(z^" +
                                     std::to_string(m) + ")");
}

// Hadamard family u_k = e^{-sqrt k} sin(k x) sinh(k y): harmonic, with Cauchy
// data on y = 0 decaying like k e^{-sqrt k} while the solution grows like
// sinh(k) e^{-sqrt k}.
inline SpaceTimeField hadamard_field(const SpaceGrid& g, const TimeAxis& ta, int k) {
  double amp = std::exp(-std::sqrt(static_cast<double>(k)));
  Analytic a;
  double kk = k;
  a.value = [kk, amp](const Vec& x, double) {
    return cplx(amp * std::sin(kk * x[0]) * std::sinh(kk * x[1]));
  };
  a.dx = [kk, amp](const Vec& x, double, int i) {
    if (i == 0) return cplx(amp * kk * std::cos(kk * x[0]) * std::sinh(kk * x[1]));
    return cplx(amp * kk * std::sin(kk * x[0]) * std::cosh(kk * x[1]));
  };
  a.dxx = [kk, amp](const Vec& x, double, int i, int j) {
    if (i == 0 && j == 0) return cplx(-amp * kk * kk * std::sin(kk * x[0]) * std::sinh(kk * x[1]));
    if (i == 1 && j == 1) return cplx(amp * kk * kk * std::sin(kk * x[0]) * std::sinh(kk * x[1]));
    return cplx(amp * kk * kk * std::cos(kk * x[0]) * std::cosh(kk * x[1]));
  };
  a.dt = [](const Vec&, double, int) { return cplx(0.0); };
  a.dxdt = [](const Vec&, double, int, int) { return cplx(0.0); };
  a.dxxdt = [](const Vec&, double, int, int, int) { return cplx(0.0); };
  return SpaceTimeField::sampled(g, ta, a, "hadamard-" + std::to_string(k));
}

// seeded random sum of separable trig modes; `dirichlet` restricts the space
// parts to sin(k pi x / L) factors vanishing on the box boundary
inline SpaceTimeField random_smooth_field(const SpaceGrid& g, const TimeAxis& ta, uint64_t seed,
                                          int nmodes = 4, bool dirichlet = false,
                                          bool complex_time = false) {
  CounterRng rng(seed, 0x66616d69u);
  ModeSum ms;
  int dim = g.dim();
  for (int m = 0; m < nmodes; ++m) {
    double amp = rng.uniform(-1.0, 1.0);
    if (dirichlet) {
      int k1 = rng.uniform_int(1, 3), k2 = rng.uniform_int(1, 3);
      double kx = k1 * M_PI / g.box.side(0);
      double ky = dim == 2 ? k2 * M_PI / g.box.side(1) : 0.0;
      ms.add(trig_space_mode(kx, ky, -kx * g.box.lo[0], -ky * g.box.lo[1], dim, amp),
             cos_time_mode(rng.uniform(0.5, 3.0), rng.uniform(0.0, 2 * M_PI)));
    } else {
      double kx = rng.uniform(0.5, 3.0), ky = rng.uniform(0.5, 3.0);
      auto sm = trig_space_mode(kx, dim == 2 ? ky : 0.0, rng.uniform(0.0, 2 * M_PI),
                                rng.uniform(0.0, 2 * M_PI), dim, amp);
      if (complex_time)
        ms.add(sm, exp_i_time_mode(rng.uniform(-3.0, 3.0)));
      else
        ms.add(sm, cos_time_mode(rng.uniform(0.5, 3.0), rng.uniform(0.0, 2 * M_PI)));
    }
  }
  return SpaceTimeField::sampled(g, ta, ms.build(), "random-smooth-" + std::to_string(seed));
}

// --- radial bump with analytic derivatives (Carleman sweeps) --------------------

// B(r) = S((r - r0)/w) S((r1 - r)/w): C^2, equal to 1 on [r0 + w, r1 - w],
// supported in [r0, r1]
struct RadialBump {
  Vec center{0.0, 0.0};
  double r0 = 0.5, r1 = 3.0, w = 0.5;

  double profile(double r, int deriv) const {
    double s1 = (r - r0) / w, s2 = (r1 - r) / w;
    auto S = [](double s, int d) {
      if (s <= 0.0) return 0.0;
      if (s >= 1.0) return d == 0 ? 1.0 : 0.0;
      switch (d) {
        case 0: return smoothstep5(s);
        case 1: return smoothstep5_d1(s);
        default: return smoothstep5_d2(s);
      }
    };
    if (deriv == 0) return S(s1, 0) * S(s2, 0);
    if (deriv == 1) return (S(s1, 1) * S(s2, 0) - S(s1, 0) * S(s2, 1)) / w;
    return (S(s1, 2) * S(s2, 0) - 2.0 * S(s1, 1) * S(s2, 1) + S(s1, 0) * S(s2, 2)) / (w * w);
  }

  Analytic analytic() const {
    RadialBump b = *this;
    Analytic a;
    auto rad = [b](const Vec& x) {
      double dx = x[0] - b.center[0], dy = x[1] - b.center[1];
      return std::sqrt(dx * dx + dy * dy);
    };
    a.value = [b, rad](const Vec& x, double) { return cplx(b.profile(rad(x), 0)); };
    a.dx = [b, rad](const Vec& x, double, int i) {
      double r = rad(x);
      if (r < 1e-14) return cplx(0.0);
      double xi = x[i] - b.center[i];
      return cplx(b.profile(r, 1) * xi / r);
    };
    a.dxx = [b, rad](const Vec& x, double, int i, int j) {
      double r = rad(x);
      if (r < 1e-14) return cplx(0.0);
      double xi = x[i] - b.center[i], xj = x[j] - b.center[j];
      double d1 = b.profile(r, 1), d2 = b.profile(r, 2);
      double val = d2 * xi * xj / (r * r) + d1 * ((i == j ? 1.0 : 0.0) / r - xi * xj / (r * r * r));
      return cplx(val);
    };
    a.dt = [](const Vec&, double, int) { return cplx(0.0); };
    a.dxdt = [](const Vec&, double, int, int) { return cplx(0.0); };
    a.dxxdt = [](const Vec&, double, int, int, int) { return cplx(0.0); };
    return a;
  }
};

} // namespace uclab

#endif
