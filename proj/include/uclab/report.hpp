#ifndef UCLAB_REPORT_HPP
#define UCLAB_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace uclab {

enum class CheckMode { ExplicitConstant, FittedConstant, RateFit, Identity };

inline const char* to_string(CheckMode m) {
  switch (m) {
    case CheckMode::ExplicitConstant: return "explicit-constant";
    case CheckMode::FittedConstant: return "fitted-constant";
    case CheckMode::RateFit: return "rate-fit";
    case CheckMode::Identity: return "identity";
  }
  return "?";
}

enum class Verdict { Pass, Fail, Skip };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skip: return "skip";
  }
  return "?";
}

struct FittedValue {
  double value = 0.0;
  double spread = 0.0; // max/min over the family (or 95% spread where noted)
  bool present = false;
};

struct ConvergenceRow {
  double h = 0.0;
  double value = 0.0;
};

// Machine-readable result of one certificate run. Margins are log-domain
// (ln RHS - ln LHS) for explicit-constant rows, residuals for identity rows,
// |slope - target|/|target| style gaps for rate fits.
struct CheckReport {
  std::string id;
  std::string anchor;   // stable inequality tag carried into the reports
  CheckMode mode = CheckMode::ExplicitConstant;
  Verdict verdict = Verdict::Fail;
  std::string reason;   // skip reason or failure diagnostics
  std::vector<double> margins;
  FittedValue fitted;
  std::vector<ConvergenceRow> convergence;
  std::vector<std::string> notes;
  uint64_t seed = 0;
  int64_t runtime_ms = 0;

  bool passed() const { return verdict == Verdict::Pass; }
  double worst_margin() const {
    double w = std::numeric_limits<double>::infinity();
    for (double m : margins) w = std::min(w, m);
    return margins.empty() ? 0.0 : w;
  }
};

} // namespace uclab

#endif
