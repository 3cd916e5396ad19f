#ifndef UCLAB_CONFIG_HPP
#define UCLAB_CONFIG_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "uclab/certificates.hpp"

namespace uclab {

// Batch-run configuration: a key = value file plus flag overrides (flags win).
// Recognized keys: suite, seed, family_size, grid_level, lambdas, deltas,
// rate_lambdas, T, medium, out, jobs.
struct RunConfig {
  std::string suite = "all"; // group name, "all", or comma-separated ids
  std::string out_dir = "reports";
  int jobs = 0; // 0 = hardware concurrency
  CertificateConfig cert;
};

inline std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

inline std::vector<std::string> parse_string_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // trim
    size_t a = tok.find_first_not_of(" \t");
    size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(tok.substr(a, b - a + 1));
  }
  return out;
}

inline void apply_config_pair(RunConfig& rc, const std::string& key, const std::string& value) {
  if (key == "suite")
    rc.suite = value;
  else if (key == "seed")
    rc.cert.seed = std::stoull(value);
  else if (key == "family_size")
    rc.cert.family_size = std::stoi(value);
  else if (key == "grid_level")
    rc.cert.grid_level = std::stoi(value);
  else if (key == "lambdas")
    rc.cert.lambdas = parse_double_list(value);
  else if (key == "rate_lambdas")
    rc.cert.rate_lambdas = parse_double_list(value);
  else if (key == "deltas")
    rc.cert.deltas = parse_double_list(value);
  else if (key == "T")
    rc.cert.T = std::stod(value);
  else if (key == "medium")
    rc.cert.medium = value;
  else if (key == "out")
    rc.out_dir = value;
  else if (key == "jobs")
    rc.jobs = std::stoi(value);
  else
    throw std::invalid_argument("unknown config key: " + key);
}

inline void load_config_file(RunConfig& rc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::invalid_argument("config parse error at line " + std::to_string(lineno));
      continue;
    }
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    apply_config_pair(rc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

// resolve a suite selector into certificate ids, registry order
inline std::vector<std::string> resolve_suite(const std::string& suite) {
  std::vector<std::string> ids;
  auto& reg = certificate_registry();
  if (suite == "all") {
    for (const auto& r : reg) ids.push_back(r.id);
    return ids;
  }
  bool group = false;
  for (const auto& r : reg)
    if (r.group == suite) {
      ids.push_back(r.id);
      group = true;
    }
  if (group) return ids;
  for (const auto& id : parse_string_list(suite)) {
    bool found = false;
    for (const auto& r : reg)
      if (r.id == id) found = true;
    if (!found) throw std::invalid_argument("unknown certificate id: " + id);
    ids.push_back(id);
  }
  return ids;
}

} // namespace uclab

#endif
