// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "blinddiag/detection.hpp"
#include "blinddiag/harness.hpp"
#include "blinddiag/kernels.hpp"
#include "blinddiag/selftest.hpp"
#include "blinddiag/serialization.hpp"
#include "blinddiag/solver.hpp"

namespace bd = blinddiag;
namespace bj = blinddiag::json;

namespace {

void write_rows(const std::string& path, const std::vector<bd::ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  bd::write_csv(out, rows);
  if (!out) throw std::runtime_error("write failed: " + path);
}

// A simulate config is either a bare scenario or an object with "base" and
// optionally "settings", as in a sweep file.
void load_point_config(const std::string& path, bd::ScenarioConfig& cfg,
                       bd::MethodSettings& settings) {
  const bj::Json j = bj::read_file(path);
  if (j.is_object() && j.contains("base")) {
    cfg = bj::scenario_from_json(j.at("base"));
    if (j.contains("settings")) settings = bj::settings_from_json(j.at("settings"));
  } else {
    cfg = bj::scenario_from_json(j);
  }
}

int cmd_simulate(const std::string& config, const std::string& method, int trials,
                 std::uint64_t seed, bool seed_given, const std::string& out,
                 const std::string& label, int threads) {
  bd::ScenarioConfig cfg;
  bd::MethodSettings settings;
  load_point_config(config, cfg, settings);
  const std::uint64_t master = seed_given ? seed : cfg.seed;
  const bd::ResultRow row = bd::run_point(cfg, bd::parse_method(method), trials, master, settings,
                                          true, threads, bd::parse_swept_param(label));
  write_rows(out, {row});
  std::cout << bd::kCsvHeader << '\n' << bd::format_csv_row(row) << '\n';
  return 0;
}

int cmd_sweep(const std::string& config, const std::string& out, const std::string& manifest) {
  const bd::SweepSpec spec = bj::sweep_from_json(bj::read_file(config));
  const auto rows = bd::run_sweep(spec);
  write_rows(out, rows);
  if (!manifest.empty()) bj::write_file(manifest, bj::to_json(spec));
  std::cerr << "wrote " << rows.size() << " rows to " << out << '\n';
  return 0;
}

int cmd_diagnose(const std::string& path, const std::string& out) {
  const bj::Json j = bj::read_file(path);
  const bd::MeasurementSet meas = bj::measurements_from_json(j);
  bd::SolverConfig cfg;
  if (j.contains("solver")) cfg = bj::solver_from_json(j.at("solver"));
  double threshold = 0.1;
  if (j.contains("detection_threshold")) threshold = j.at("detection_threshold").get<double>();
  const bd::DiagnosisResult result = bd::diagnose(meas, cfg);
  const bd::FaultVerdict verdict = bd::classify_faults(result.hf_hat, threshold);
  bj::write_file(out, bj::to_json(result, verdict));
  std::cerr << "converged=" << (result.converged ? "true" : "false")
            << " iterations=" << result.iterations << " faulty=" << verdict.flagged().size()
            << '\n';
  return 0;
}

int cmd_selftest() {
  std::cout << "kernels: " << bd::kernels::isa_name(bd::kernels::active().isa) << '\n';
  bool ok = true;
  for (const auto& c : bd::run_selftest()) {
    std::printf("%s  %-45s worst=%.3g tol=%.1g\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.metric, c.tolerance);
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind antenna fault diagnosis: solver, baselines and Monte Carlo harness"};
  app.require_subcommand(1);

  std::string config, method = "proposed", out, manifest, measurements, label = "n_measurements";
  int trials = 200, threads = 1;
  std::uint64_t seed = 0;

  auto* sim = app.add_subcommand("simulate", "Monte Carlo at a single scenario point");
  sim->add_option("--config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--method", method, "proposed | full_csi | partial_csi | grid")->capture_default_str();
  sim->add_option("--trials", trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
  auto* seed_opt = sim->add_option("--seed", seed, "Master seed (default: the config's seed)");
  sim->add_option("--out", out, "Output CSV")->required();
  sim->add_option("--label", label, "swept_param written to the CSV row")->capture_default_str();
  sim->add_option("--threads", threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("--config", config, "Sweep JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "Output CSV")->required();
  sweep->add_option("--manifest", manifest, "Write the resolved sweep spec here");

  auto* diag = app.add_subcommand("diagnose", "Run the blind solver on a measurement set");
  diag->add_option("--measurements", measurements, "MeasurementSet JSON")->required()->check(CLI::ExistingFile);
  diag->add_option("--out", out, "Output JSON")->required();

  auto* self = app.add_subcommand("selftest", "Run the invariant suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return cmd_simulate(config, method, trials, seed, seed_opt->count() > 0, out, label, threads);
    }
    if (sweep->parsed()) return cmd_sweep(config, out, manifest);
    if (diag->parsed()) return cmd_diagnose(measurements, out);
    if (self->parsed()) return cmd_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
