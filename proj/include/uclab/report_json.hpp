#ifndef UCLAB_REPORT_JSON_HPP
#define UCLAB_REPORT_JSON_HPP

#include <json.hpp>

#include "uclab/norms.hpp"
#include "uclab/report.hpp"

namespace uclab {

// Schema: id, anchor, mode, margins[], fitted{value,spread}, convergence[],
// verdict, reason, notes[], seed, runtime_ms. Reports are deterministic for a
// fixed seed modulo the runtime field.
inline nlohmann::ordered_json report_to_json(const CheckReport& rep) {
  nlohmann::ordered_json j;
  j["id"] = rep.id;
  j["anchor"] = rep.anchor;
  j["mode"] = to_string(rep.mode);
  auto clamp = [](double v) {
    if (std::isnan(v)) return 0.0;
    return std::max(-1e300, std::min(1e300, v));
  };
  j["margins"] = nlohmann::ordered_json::array();
  for (double m : rep.margins) j["margins"].push_back(clamp(m));
  if (rep.fitted.present) {
    j["fitted"] = {{"value", clamp(rep.fitted.value)}, {"spread", clamp(rep.fitted.spread)}};
  } else {
    j["fitted"] = nullptr;
  }
  j["convergence"] = nlohmann::ordered_json::array();
  for (const auto& row : rep.convergence)
    j["convergence"].push_back({{"h", row.h}, {"value", clamp(row.value)}});
  j["verdict"] = to_string(rep.verdict);
  j["reason"] = rep.reason;
  j["notes"] = rep.notes;
  j["seed"] = rep.seed;
  j["runtime_ms"] = rep.runtime_ms;
  return j;
}

inline nlohmann::ordered_json norm_report_to_json(const NormReport& r) {
  nlohmann::ordered_json j;
  j["label"] = r.label;
  j["alpha"] = r.alpha;
  j["grid"] = {{"nx", r.nx}, {"ny", r.ny}, {"nt", r.nt}};
  j["L2"] = r.l2;
  j["H1"] = r.h1;
  j["H1_time_L2"] = r.bochner_h1_l2;
  j["H2_time_H2"] = r.bochner_h2_h2;
  j["holder_seminorm"] = r.holder_semi;
  j["C0alpha"] = r.c0alpha;
  j["C1alpha"] = r.c1alpha;
  j["H11_Sigma"] = r.h11_sigma;
  j["H12_surrogate"] = r.bd_h12_surr;
  j["H32_surrogate"] = r.bd_h32_surr;
  return j;
}

} // namespace uclab

#endif
