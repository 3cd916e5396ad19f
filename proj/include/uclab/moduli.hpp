#ifndef UCLAB_MODULI_HPP
#define UCLAB_MODULI_HPP

#include <cmath>
#include <stdexcept>

#include "uclab/logscalar.hpp"
#include "uclab/report.hpp"

namespace uclab {

// Single / double / triple-log stability moduli. Identity branch above the
// breakpoint, extension by continuity at 0.
enum class ModulusKind { PhiSingleLog, ThetaDoubleLog, PsiTripleLog };

struct ModulusSpec {
  ModulusKind kind = ModulusKind::PhiSingleLog;
  double beta = 1.0;
  // Phi uses breakpoint e^{-c} parameterized by c; Theta/Psi carry the
  // breakpoint rho_0 directly (<= e^{-1}, resp. <= e^{-e}).
  double c = 1.0;
  double rho0 = std::exp(-std::exp(1.0));

  double breakpoint() const {
    return kind == ModulusKind::PhiSingleLog ? std::exp(-c) : rho0;
  }

  void validate() const {
    if (!(beta > 0.0)) throw std::invalid_argument("modulus: beta > 0 required");
    switch (kind) {
      case ModulusKind::PhiSingleLog:
        if (!(c > 0.0)) throw std::invalid_argument("modulus: c > 0 required");
        break;
      case ModulusKind::ThetaDoubleLog:
        if (!(rho0 > 0.0 && rho0 <= std::exp(-1.0)))
          throw std::invalid_argument("modulus: Theta breakpoint must lie in (0, e^-1]");
        break;
      case ModulusKind::PsiTripleLog:
        if (!(rho0 > 0.0 && rho0 <= std::exp(-std::exp(1.0))))
          throw std::invalid_argument("modulus: Psi breakpoint must lie in (0, e^-e]");
        break;
    }
  }
};

inline double modulus_eval(const ModulusSpec& spec, double rho) {
  spec.validate();
  if (rho < 0.0) throw std::invalid_argument("modulus_eval: rho >= 0 required");
  if (rho == 0.0) return 0.0;
  if (rho >= spec.breakpoint()) return rho;
  double al = std::abs(std::log(rho));
  switch (spec.kind) {
    case ModulusKind::PhiSingleLog:
      return std::pow(al, -spec.beta);
    case ModulusKind::ThetaDoubleLog:
      return std::pow(std::log(al), -spec.beta);
    case ModulusKind::PsiTripleLog:
      return std::pow(std::log(std::log(al)), -spec.beta);
  }
  return 0.0;
}

// Solves eps^beta e^{-c/eps} = b on the log scale: beta ln(eps) - c/eps = ln b.
// The left side is strictly increasing, so bisection is exact; requires b
// below the breakpoint e^{-c} (otherwise the caller takes the identity
// branch). The root obeys eps0 <= (c + beta) / |ln b|.
inline double solve_epsilon(double beta, double c, double b) {
  if (!(beta > 0.0 && c > 0.0)) throw std::invalid_argument("solve_epsilon: beta, c > 0");
  if (!(b > 0.0 && b < std::exp(-c)))
    throw std::domain_error("solve_epsilon: no root, b above the breakpoint");
  double target = std::log(b);
  auto g = [&](double e) { return beta * std::log(e) - c / e; };
  double lo = 1e-300, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Parameter selections used by the log-space assembly:
//   lambda = 16 delta^-16 / T^2 (exact double),
//   eps    = exp(-2 c0 delta^-14 / beta),
//   mu     = (e_2(c delta^-14) / delta^s)^4, from e_2(c delta^-14) mu^{-1/4} = delta^s.
struct ParameterSelection {
  double lambda = 0.0;
  LogScalar eps;
  LogScalar mu;
};

inline ParameterSelection parameter_selection(double delta, double T, double c0, double c,
                                              double s, double beta = 1.0) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("parameter_selection: delta in (0,1)");
  ParameterSelection p;
  p.lambda = 16.0 * std::pow(delta, -16.0) / (T * T);
  p.eps = LogScalar::from_log(-2.0 * c0 * std::pow(delta, -14.0) / beta);
  LogScalar e2 = iterated_exp(2, c * std::pow(delta, -14.0));
  LogScalar ds = LogScalar::from_log(s * std::log(delta));
  p.mu = pow(e2 / ds, 4.0);
  return p;
}

// The admissible delta interval [sqrt(8) rho_lo / T, sqrt(8) rho_hi / T].
// Configuration validation: 0 < rho_lo < rho_hi, sqrt(8) rho_hi < T0,
// T >= T0, and T0 above the domain depth.
struct DeltaInterval {
  double lo = 0.0, hi = 0.0;
};

inline DeltaInterval admissible_delta_interval(double rho_lo, double rho_hi, double T, double T0,
                                               double domain_depth) {
  if (!(rho_lo > 0.0 && rho_lo < rho_hi))
    throw std::invalid_argument("delta interval: need 0 < rho_lo < rho_hi");
  if (!(std::sqrt(8.0) * rho_hi < T0))
    throw std::invalid_argument("delta interval: sqrt(8) rho_hi must stay below T0");
  if (!(T >= T0)) throw std::invalid_argument("delta interval: T >= T0 required");
  if (!(T0 > domain_depth))
    throw std::invalid_argument("delta interval: T0 must exceed the domain depth");
  return {std::sqrt(8.0) * rho_lo / T, std::sqrt(8.0) * rho_hi / T};
}

// Final-bound assembly in LogScalar arithmetic:
//   RHS = delta^s N(u) + e_k(c delta^-14) * data,  k = 3 (general) or 2
//   (smallness gate open). Reports whether the numerical LHS is dominated and
//   the non-vacuity threshold: the smallest delta in [delta_lo, delta_hi]
//   with RHS < N(u) (the bound then says something nontrivial).
struct AssemblyResult {
  LogScalar rhs;
  bool lhs_dominated = false;
  bool vacuous = false;          // e-term alone exceeds N(u)
  int exp_depth = 1;             // nesting depth of the dominant term
  double nonvacuity_delta = -1.0; // -1 when no admissible delta works
};

inline LogScalar assembly_rhs(int exp_k, double delta, double s, double c, double normN,
                              double data) {
  LogScalar first = LogScalar::from_log(s * std::log(delta)) * LogScalar::from_value(normN);
  if (data == 0.0) return first;
  LogScalar second = iterated_exp(exp_k, c * std::pow(delta, -14.0)) * LogScalar::from_value(data);
  return first + second;
}

inline AssemblyResult assemble_final_bound(int exp_k, double lhs, double normN, double data,
                                           double delta, double s, double c, double delta_lo,
                                           double delta_hi) {
  if (exp_k != 2 && exp_k != 3) throw std::invalid_argument("assemble_final_bound: k in {2,3}");
  AssemblyResult r;
  r.rhs = assembly_rhs(exp_k, delta, s, c, normN, data);
  r.exp_depth = r.rhs.depth;
  r.lhs_dominated = LogScalar::from_value(lhs) <= r.rhs;
  LogScalar N = LogScalar::from_value(normN);
  r.vacuous = !(r.rhs < N);
  // bisection for the smallest admissible delta with RHS < N(u)
  auto ok = [&](double d) { return assembly_rhs(exp_k, d, s, c, normN, data) < N; };
  if (normN > 0.0 && ok(delta_hi)) {
    if (ok(delta_lo)) {
      r.nonvacuity_delta = delta_lo;
    } else {
      double lo = delta_lo, hi = delta_hi;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (ok(mid))
          hi = mid;
        else
          lo = mid;
      }
      r.nonvacuity_delta = hi;
    }
  }
  return r;
}

} // namespace uclab

#endif
