#ifndef UCLAB_LOGSCALAR_HPP
#define UCLAB_LOGSCALAR_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace uclab {

// Nonnegative extended scalar stored as an iterated-exponential tower:
//   value = e_depth(log_mag)   with  e_0 = id, e_1 = exp, e_2 = exp(exp(.)).
// depth 1 is the plain log domain; depth 2 appears when even the logarithm
// overflows (e.g. e_3(c delta^-14) terms). Comparisons stay exact in the
// representable regime; additions that cross depths saturate to the larger
// operand and set `saturated`.
struct LogScalar {
  double log_mag = -std::numeric_limits<double>::infinity(); // value 0 by default
  int depth = 1;
  bool saturated = false;

  static constexpr double kMaxLog = 700.0; // exp() still finite below this

  static LogScalar zero() { return LogScalar{}; }

  static LogScalar from_value(double v) {
    if (v < 0.0) throw std::invalid_argument("LogScalar: negative value");
    LogScalar s;
    s.log_mag = v == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(v);
    return s;
  }

  static LogScalar from_log(double lg) {
    LogScalar s;
    s.log_mag = lg;
    s.normalize();
    return s;
  }

  // value = exp(exp(llg)); used when the log itself is out of double range
  static LogScalar from_log_log(double llg) {
    LogScalar s;
    s.log_mag = llg;
    s.depth = 2;
    s.normalize();
    return s;
  }

  bool is_zero() const { return depth == 1 && std::isinf(log_mag) && log_mag < 0.0; }

  void normalize() {
    // collapse depth 2 -> 1 whenever exp(log_mag) stays finite
    while (depth > 1 && log_mag < kMaxLog) {
      log_mag = std::exp(log_mag);
      --depth;
    }
  }

  double value() const {
    if (is_zero()) return 0.0;
    if (depth == 1) return log_mag < kMaxLog ? std::exp(log_mag)
                                             : std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::infinity();
  }

  // natural log of the value; +inf if not representable at depth 1
  double log_value() const {
    if (depth == 1) return log_mag;
    return std::numeric_limits<double>::infinity();
  }

  std::string describe() const {
    if (is_zero()) return "0";
    if (depth == 1) return "exp(" + std::to_string(log_mag) + ")";
    return "exp(exp(" + std::to_string(log_mag) + "))";
  }
};

inline int compare(const LogScalar& a, const LogScalar& b) {
  if (a.is_zero() && b.is_zero()) return 0;
  if (a.depth != b.depth) {
    // bring the shallower one up: at depth 2 the stored log_mag is
    // log(log(value)); a depth-1 value has log(log) = log(log_mag).
    double la = a.depth == 2 ? a.log_mag : (a.log_mag > 0 ? std::log(a.log_mag)
                                                          : -std::numeric_limits<double>::infinity());
    double lb = b.depth == 2 ? b.log_mag : (b.log_mag > 0 ? std::log(b.log_mag)
                                                          : -std::numeric_limits<double>::infinity());
    if (la < lb) return -1;
    if (la > lb) return 1;
    return 0;
  }
  if (a.log_mag < b.log_mag) return -1;
  if (a.log_mag > b.log_mag) return 1;
  return 0;
}

inline bool operator<(const LogScalar& a, const LogScalar& b) { return compare(a, b) < 0; }
inline bool operator<=(const LogScalar& a, const LogScalar& b) { return compare(a, b) <= 0; }

inline LogScalar operator*(const LogScalar& a, const LogScalar& b) {
  if (a.is_zero() || b.is_zero()) return LogScalar::zero();
  if (a.depth == 1 && b.depth == 1) return LogScalar::from_log(a.log_mag + b.log_mag);
  // depth-2 times anything: log(value) = exp(big) + other_log ~ exp(big)
  const LogScalar& big = a.depth >= b.depth ? a : b;
  LogScalar r = big;
  r.saturated = true;
  return r;
}

inline LogScalar operator+(const LogScalar& a, const LogScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.depth == 1 && b.depth == 1) {
    double hi = std::max(a.log_mag, b.log_mag);
    double lo = std::min(a.log_mag, b.log_mag);
    return LogScalar::from_log(hi + std::log1p(std::exp(lo - hi)));
  }
  LogScalar r = compare(a, b) >= 0 ? a : b;
  r.saturated = true; // smaller addend below resolution
  return r;
}

inline LogScalar operator/(const LogScalar& a, const LogScalar& b) {
  if (a.is_zero()) return LogScalar::zero();
  if (b.is_zero()) throw std::domain_error("LogScalar: division by zero");
  if (a.depth == 1 && b.depth == 1) return LogScalar::from_log(a.log_mag - b.log_mag);
  if (a.depth == 2 && b.depth == 1) {
    LogScalar r = a; // exp(exp(x))/e^y: log = exp(x) - y ~ exp(x)
    r.saturated = true;
    return r;
  }
  throw std::domain_error("LogScalar: unsupported division across depths");
}

inline LogScalar pow(const LogScalar& a, double p) {
  if (a.is_zero()) return p > 0 ? LogScalar::zero() : LogScalar::from_value(1.0);
  if (a.depth == 1) return LogScalar::from_log(a.log_mag * p);
  LogScalar r = a;
  r.log_mag += std::log(std::abs(p)); // (e^{e^x})^p = e^{p e^x}
  r.saturated = r.saturated || p < 0;
  return r;
}

// Iterated exponential e_k as a LogScalar, k in {2, 3}.
inline LogScalar iterated_exp(int k, double x) {
  if (k == 2) {
    // value = exp(exp(x)): log = exp(x)
    if (x < LogScalar::kMaxLog) return LogScalar::from_log(std::exp(x));
    return LogScalar::from_log_log(x); // log(log(value)) = x
  }
  if (k == 3) {
    // value = exp(exp(exp(x))): log(log(value)) = exp(x)
    if (x < LogScalar::kMaxLog) {
      double ex = std::exp(x);
      if (ex < LogScalar::kMaxLog) return LogScalar::from_log(std::exp(ex));
      return LogScalar::from_log_log(ex);
    }
    // even log(log(value)) overflows a double: saturate at depth 2
    LogScalar r;
    r.depth = 2;
    r.log_mag = std::numeric_limits<double>::infinity();
    r.saturated = true;
    return r;
  }
  throw std::invalid_argument("iterated_exp: k must be 2 or 3");
}

} // namespace uclab

#endif
