#ifndef UCLAB_CUTOFF_HPP
#define UCLAB_CUTOFF_HPP

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace uclab {

// Quintic smoothstep S(s) = 6s^5 - 15s^4 + 10s^3 on [0,1].
inline double smoothstep5(double s) { return ((6.0 * s - 15.0) * s + 10.0) * s * s * s; }
inline double smoothstep5_d1(double s) { return 30.0 * s * s * (1.0 - s) * (1.0 - s); }
inline double smoothstep5_d2(double s) { return 60.0 * s * (2.0 * s - 1.0) * (s - 1.0); }

// Time cutoff: chi = 1 on |t| <= (1-delta/2)T, 0 on |t| >= T, quintic
// smoothstep in between. C^2 with
//   sup|chi'|  = (15/4)  / (delta T),
//   sup|chi''| = (40/sqrt3) / (delta T)^2,
// so the single constant varpi = 40/sqrt(3) serves both bounds.
struct CutoffProfile {
  double delta = 0.5;
  double T = 1.0;
  double varpi = 0.0;

  double band() const { return 0.5 * delta * T; }       // transition width
  double plateau() const { return (1.0 - 0.5 * delta) * T; }
};

inline constexpr double kSupSmoothstepD1 = 15.0 / 8.0;
inline double sup_smoothstep_d2() { return 10.0 / std::sqrt(3.0); }

namespace detail {
// ternary search refinement of max |f| on [0,1]; used to re-verify the
// analytic extrema at build time
template <typename F>
double max_abs_on_unit(F f, int coarse = 4096) {
  double best = 0.0, at = 0.0;
  for (int i = 0; i <= coarse; ++i) {
    double s = static_cast<double>(i) / coarse;
    double v = std::abs(f(s));
    if (v > best) {
      best = v;
      at = s;
    }
  }
  double lo = std::max(0.0, at - 2.0 / coarse), hi = std::min(1.0, at + 2.0 / coarse);
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (std::abs(f(m1)) < std::abs(f(m2)))
      lo = m1;
    else
      hi = m2;
  }
  return std::abs(f(0.5 * (lo + hi)));
}
} // namespace detail

inline CutoffProfile build_cutoff(double delta, double T) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("build_cutoff: delta in (0,1)");
  if (!(T > 0.0)) throw std::invalid_argument("build_cutoff: T > 0");
  CutoffProfile p;
  p.delta = delta;
  p.T = T;
  double analytic = std::max(4.0 * kSupSmoothstepD1 / 2.0, 4.0 * sup_smoothstep_d2());
  // equivalently max(15/4, 40/sqrt3) after scaling by the band width powers
  double numeric = std::max(2.0 * detail::max_abs_on_unit(smoothstep5_d1),
                            4.0 * detail::max_abs_on_unit(smoothstep5_d2));
  if (std::abs(analytic - numeric) > 1e-10)
    throw std::logic_error("build_cutoff: analytic and numeric varpi disagree");
  p.varpi = analytic;
  return p;
}

// chi(t), chi'(t), chi''(t)
inline std::tuple<double, double, double> evaluate(const CutoffProfile& p, double t) {
  double u = std::abs(t);
  double inner = p.plateau(), outer = p.T, w = p.band();
  if (u <= inner) return {1.0, 0.0, 0.0};
  if (u >= outer) return {0.0, 0.0, 0.0};
  double s = (outer - u) / w; // 1 at the plateau edge, 0 at |t| = T
  double sgn = t >= 0.0 ? -1.0 : 1.0; // d s/d t
  double v = smoothstep5(s);
  double d1 = smoothstep5_d1(s) * sgn / w;
  double d2 = smoothstep5_d2(s) / (w * w);
  return {v, d1, d2};
}

inline double cutoff_value(const CutoffProfile& p, double t) { return std::get<0>(evaluate(p, t)); }

} // namespace uclab

#endif
