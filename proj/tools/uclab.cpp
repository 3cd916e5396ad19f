// Batch front-end for the verification laboratory: runs certificate suites,
// parameter sweeps and manufactured-family exports.
//
// Exit codes: 0 all selected certificates pass (or are gate-skipped),
// 1 at least one failure, 2 usage / configuration error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <thread>

#include "uclab/certificates.hpp"
#include "uclab/config.hpp"
#include "uclab/fbi.hpp"
#include "uclab/report_json.hpp"

namespace fs = std::filesystem;
using namespace uclab;

namespace {

int cmd_verify(const RunConfig& rc) {
  std::vector<std::string> ids;
  try {
    ids = resolve_suite(rc.suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  fs::create_directories(rc.out_dir);

  // fixed-size work pool; report assembly stays in registry order
  unsigned jobs = rc.jobs > 0 ? static_cast<unsigned>(rc.jobs)
                              : std::max(1u, std::thread::hardware_concurrency());
  std::vector<CheckReport> reports(ids.size());
  std::vector<std::string> errors(ids.size());
  std::mutex mtx;
  size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      size_t i;
      {
        std::lock_guard<std::mutex> lk(mtx);
        if (next >= ids.size()) return;
        i = next++;
      }
      try {
        reports[i] = run_certificate(ids[i], rc.cert);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<size_t>(jobs, ids.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int passed = 0, failed = 0, skipped = 0;
  nlohmann::ordered_json summary;
  summary["suite"] = rc.suite;
  summary["seed"] = rc.cert.seed;
  summary["reports"] = nlohmann::ordered_json::array();
  for (size_t i = 0; i < ids.size(); ++i) {
    CheckReport& rep = reports[i];
    if (!errors[i].empty()) {
      rep.id = ids[i];
      rep.verdict = Verdict::Fail;
      rep.reason = "exception: " + errors[i];
    }
    switch (rep.verdict) {
      case Verdict::Pass: ++passed; break;
      case Verdict::Fail: ++failed; break;
      case Verdict::Skip: ++skipped; break;
    }
    auto j = report_to_json(rep);
    std::ofstream out(fs::path(rc.out_dir) / (rep.id + ".json"));
    out << j.dump(2) << "\n";
    summary["reports"].push_back(j);
    std::cout << rep.id << ": " << to_string(rep.verdict);
    if (!rep.reason.empty()) std::cout << " (" << rep.reason << ")";
    std::cout << "\n";
  }
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["skipped"] = skipped;
  {
    std::ofstream out(fs::path(rc.out_dir) / "summary.json");
    out << summary.dump(2) << "\n";
  }
  std::cout << "passed " << passed << ", failed " << failed << ", skipped " << skipped << "\n";
  return failed == 0 ? 0 : 1;
}

int cmd_sweep(const RunConfig& rc) {
  if (rc.cert.lambdas.empty() || rc.cert.deltas.empty()) {
    std::cerr << "error: empty lambda or delta list\n";
    return 2;
  }
  fs::create_directories(rc.out_dir);
  std::ofstream csv(fs::path(rc.out_dir) / "residual_sweep.csv");
  csv << "# residual sweep v1: transform-residual norms per (lambda, delta), t0 at the "
         "admissible edge\n";
  csv << "lambda,delta,ln_norm_k,ln_norm_g,e3p_margin,e3_margin,target_rate\n";
  char buf[256];
  for (double delta : rc.cert.deltas) {
    auto chi = build_cutoff(delta, rc.cert.T);
    ModeSum ms;
    SpaceMode sp;
    sp.v = [](const Vec&) { return cplx(1.0); };
    sp.d = [](const Vec&, int) { return cplx(0.0); };
    sp.dd = [](const Vec&, int, int) { return cplx(0.0); };
    ms.add(sp, exp_i_time_mode(1.0));
    SpaceGrid g1(Box(0.0, 1.0), 3);
    auto f = SpaceTimeField::sampled(g1, TimeAxis(-rc.cert.T, rc.cert.T, 129), ms.build(), "sweep");
    std::vector<std::pair<double, double>> kpts, gpts;
    for (double lambda : rc.cert.lambdas) {
      TransformParams p;
      p.lambda = lambda;
      p.delta = delta;
      p.T = rc.cert.T;
      p.t0 = (1.0 - delta) * rc.cert.T * (1.0 - 1e-6);
      p.tau_pts = 65;
      auto rk = first_residual(f, chi, p, false);
      auto rg = second_residual(f, chi, p, false);
      double dT = delta * rc.cert.T;
      std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.12g,%.12g,%.12g,%.12g,%.12g\n", lambda, delta,
                    rk.log_norm, rg.log_norm, rk.bound.margins[0], rg.bound.margins[0],
                    -dT * dT / 16.0);
      csv << buf;
      kpts.push_back({lambda, std::exp(rk.log_norm)});
      gpts.push_back({lambda, std::exp(rg.log_norm)});
    }
    if (kpts.size() >= 4) {
      auto fk = fit_rate(kpts), fg = fit_rate(gpts);
      std::snprintf(buf, sizeof buf, "# delta=%.6g fitted slope k=%.12g g=%.12g R2 k=%.6f g=%.6f\n",
                    delta, fk.slope, fg.slope, fk.r2, fg.r2);
      csv << buf;
    }
  }
  // one transformed-field sample for plotting: first (lambda, delta) pair
  {
    double delta = rc.cert.deltas.front();
    auto chi = build_cutoff(delta, rc.cert.T);
    ModeSum ms;
    SpaceMode sp;
    sp.v = [](const Vec& x) { return cplx(std::sin(M_PI * x[0])); };
    sp.d = [](const Vec& x, int) { return cplx(M_PI * std::cos(M_PI * x[0])); };
    sp.dd = [](const Vec& x, int, int) { return cplx(-M_PI * M_PI * std::sin(M_PI * x[0])); };
    ms.add(sp, exp_i_time_mode(1.0));
    SpaceGrid g1(Box(0.0, 1.0), 17);
    auto f = SpaceTimeField::sampled(g1, TimeAxis(-rc.cert.T, rc.cert.T, 129), ms.build(),
                                     "transform-sample");
    TransformParams p;
    p.lambda = rc.cert.lambdas.front();
    p.delta = delta;
    p.T = rc.cert.T;
    p.tau_pts = 65;
    auto tf = forward_transform(f, chi, p);
    std::ofstream tcsv(fs::path(rc.out_dir) / "transform_sample.csv");
    write_transform_csv(tcsv, tf);
  }
  std::cout << "wrote " << (fs::path(rc.out_dir) / "residual_sweep.csv").string() << "\n";
  return 0;
}

int cmd_manufacture(const RunConfig& rc, const std::string& family) {
  fs::create_directories(rc.out_dir);
  std::vector<SpaceTimeField> fields;
  Box sq(vec2(0, 0), vec2(1, 1), 2);
  TimeAxis ta(-rc.cert.T, rc.cert.T, 65);
  SpaceGrid g(sq, 33);
  if (family == "standing-waves") {
    for (int k1 = 1; k1 <= 2; ++k1)
      for (int k2 = 1; k2 <= 2; ++k2) fields.push_back(standing_wave(g, ta, k1, k2));
  } else if (family == "travelling-waves") {
    fields.push_back(travelling_wave(g, ta, 2.0, 1.0, std::sqrt(5.0)));
    fields.push_back(travelling_wave(g, ta, 1.0, 3.0, std::sqrt(10.0)));
  } else if (family == "harmonic-polynomials") {
    for (int m = 1; m <= 4; ++m)
      fields.push_back(harmonic_polynomial(g, TimeAxis(0, 1, 2), m, m % 2 == 0, vec2(-0.2, 1.1)));
  } else if (family == "hadamard") {
    Box dom(vec2(0, 0), vec2(M_PI, 1.0), 2);
    for (int k : {4, 10, 16})
      fields.push_back(hadamard_field(SpaceGrid(dom, 129, 65), TimeAxis(0, 1, 2), k));
  } else if (family == "random-smooth") {
    for (int i = 0; i < 4; ++i)
      fields.push_back(random_smooth_field(g, ta, rc.cert.seed + i, 4, false));
  } else {
    std::cerr << "error: unknown family: " << family << "\n";
    return 2;
  }
  char buf[256];
  nlohmann::ordered_json norms_json = nlohmann::ordered_json::array();
  for (size_t i = 0; i < fields.size(); ++i) {
    const auto& f = fields[i];
    bool exact_wave = family == "standing-waves";      // Pu = 0 for A = I
    bool exact_laplace = family == "harmonic-polynomials" || family == "hadamard";
    std::ofstream out(fs::path(rc.out_dir) / (family + "-" + std::to_string(i) + ".csv"));
    out << "# family=" << family << " label=" << f.label << " seed=" << rc.cert.seed
        << " analytic_derivatives=yes exact_residual="
        << (exact_wave ? "Pu=0" : (exact_laplace ? "Lu=0" : "no")) << "\n";
    out << "# grid nx=" << f.grid.npts[0] << " ny=" << f.grid.npts[1] << " nt=" << f.time.npts
        << " box=[" << f.grid.box.lo[0] << "," << f.grid.box.hi[0] << "]x[" << f.grid.box.lo[1]
        << "," << f.grid.box.hi[1] << "] t=[" << f.time.a << "," << f.time.b << "]\n";
    out << "x0,x1,t,re,im\n";
    for (int k = 0; k < f.time.npts; ++k)
      for (int iy = 0; iy < f.grid.npts[1]; ++iy)
        for (int ix = 0; ix < f.grid.npts[0]; ++ix) {
          Vec x = f.grid.point(ix, iy);
          cplx v = f.at(ix, iy, k);
          std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", x[0],
                        f.grid.dim() == 2 ? x[1] : 0.0, f.time.t(k), v.real(), v.imag());
          out << buf;
        }
    // named norms of the field, coarsened for the O(N^2) Hoelder scan
    SpaceGrid gh(f.grid.box, std::min(f.grid.npts[0], 17));
    auto fh = SpaceTimeField::sampled(gh, TimeAxis(f.time.a, f.time.b, std::min(f.time.npts, 17)),
                                      f.analytic, f.label);
    norms_json.push_back(norm_report_to_json(compute_norm_report(fh)));
  }
  {
    std::ofstream nj(fs::path(rc.out_dir) / (family + "-norms.json"));
    nj << norms_json.dump(2) << "\n";
  }
  std::cout << "wrote " << fields.size() << " field files to " << rc.out_dir << "\n";
  return 0;
}

int cmd_list() {
  for (const auto& row : certificate_registry())
    std::cout << row.id << "\t" << row.group << "\t" << to_string(row.mode) << "\t" << row.anchor
              << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification laboratory for wave-equation Cauchy-problem estimates"};
  app.require_subcommand(1);

  struct Flags {
    std::string config, suite, out, medium, lambdas, deltas, family;
    uint64_t seed = 0;
    double T = 0.0;
    int grid = -1, jobs = -1;
  } fl;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", fl.config, "key = value configuration file");
    cmd->add_option("--seed", fl.seed, "master seed");
    cmd->add_option("--out", fl.out, "output directory");
    cmd->add_option("--lambda", fl.lambdas, "comma-separated lambda sweep");
    cmd->add_option("--delta", fl.deltas, "comma-separated delta list");
    cmd->add_option("--T", fl.T, "half time-interval length");
    cmd->add_option("--medium", fl.medium, "coefficient field from the catalog");
    cmd->add_option("--grid", fl.grid, "grid refinement level");
    cmd->add_option("--jobs", fl.jobs, "parallel certificate jobs");
  };

  auto* verify = app.add_subcommand("verify", "run certificate suites");
  verify->add_option("--suite", fl.suite, "group (fbi|multiplier|appendix|assembly|all) or ids");
  add_common(verify);
  auto* sweep = app.add_subcommand("sweep", "emit residual-vs-lambda CSV data");
  add_common(sweep);
  auto* man = app.add_subcommand("manufacture", "write manufactured solution families");
  man->add_option("family", fl.family, "family id")->required();
  add_common(man);
  app.add_subcommand("list", "list the certificate registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  auto given = [&](const char* name) {
    auto* opt = active->get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  try {
    RunConfig rc;
    if (given("--config")) load_config_file(rc, fl.config);
    // flags win over the file
    if (given("--suite")) rc.suite = fl.suite;
    if (given("--seed")) rc.cert.seed = fl.seed;
    if (given("--out")) rc.out_dir = fl.out;
    if (given("--lambda")) rc.cert.lambdas = parse_double_list(fl.lambdas);
    if (given("--delta")) rc.cert.deltas = parse_double_list(fl.deltas);
    if (given("--T")) rc.cert.T = fl.T;
    if (given("--medium")) rc.cert.medium = fl.medium;
    if (given("--grid")) rc.cert.grid_level = fl.grid;
    if (given("--jobs")) rc.jobs = fl.jobs;

    if (active == verify) return cmd_verify(rc);
    if (active == sweep) return cmd_sweep(rc);
    if (active == man) return cmd_manufacture(rc, fl.family);
    return cmd_list();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
