// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "blinddiag/baselines.hpp"

namespace blinddiag {

namespace {

struct NamedMethod {
  Method m;
  std::string_view name;
};
constexpr NamedMethod kMethods[] = {{Method::kProposed, "proposed"},
                                    {Method::kFullCsi, "full_csi"},
                                    {Method::kPartialCsi, "partial_csi"},
                                    {Method::kGrid, "grid"}};

struct NamedParam {
  SweptParam p;
  std::string_view name;
};
constexpr NamedParam kParams[] = {{SweptParam::kNMeasurements, "n_measurements"},
                                  {SweptParam::kSnrDb, "snr_db"},
                                  {SweptParam::kGainErrorIntensity, "gain_error_intensity"},
                                  {SweptParam::kAoaErrorIntensity, "aoa_error_intensity"},
                                  {SweptParam::kNPaths, "n_paths"}};

int as_count(double value, std::string_view field) {
  if (!(std::isfinite(value) && value == std::floor(value))) {
    throw std::invalid_argument(std::string(field) + " must be an integer");
  }
  return static_cast<int>(value);
}

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

template <typename M>
void fnv_matrix(std::uint64_t& h, const M& m) {
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  fnv_bytes(h, dims, sizeof dims);
  fnv_bytes(h, m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size()));
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& e : kMethods) {
    if (e.m == m) return e.name;
  }
  throw std::invalid_argument("unknown method");
}

std::string_view swept_param_name(SweptParam p) {
  for (const auto& e : kParams) {
    if (e.p == p) return e.name;
  }
  throw std::invalid_argument("unknown swept parameter");
}

Method parse_method(std::string_view name) {
  for (const auto& e : kMethods) {
    if (e.name == name) return e.m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected proposed, full_csi, partial_csi or grid)");
}

SweptParam parse_swept_param(std::string_view name) {
  for (const auto& e : kParams) {
    if (e.name == name) return e.p;
  }
  throw std::invalid_argument("unknown swept parameter '" + std::string(name) + "'");
}

ScenarioConfig apply_swept_value(ScenarioConfig base, SweptParam p, double value) {
  switch (p) {
    case SweptParam::kNMeasurements: base.n_measurements = as_count(value, "n_measurements"); break;
    case SweptParam::kSnrDb: base.snr_db = value; break;
    case SweptParam::kGainErrorIntensity: base.gain_error_intensity = value; break;
    case SweptParam::kAoaErrorIntensity: base.aoa_error_intensity = value; break;
    case SweptParam::kNPaths: base.n_paths = as_count(value, "n_paths"); break;
  }
  return base;
}

void MethodSettings::validate() const {
  solver.validate();
  if (baseline_lambda < 0.0) throw std::invalid_argument("baseline_lambda must be >= 0");
  if (!(detection_threshold >= 0.0)) throw std::invalid_argument("detection_threshold must be >= 0");
  if (grid_oversampling < 1) throw std::invalid_argument("grid_oversampling must be >= 1");
  if (!(baseline_lasso.rho > 0.0) || !(baseline_lasso.tolerance > 0.0) ||
      baseline_lasso.max_iterations < 1) {
    throw std::invalid_argument("baseline_lasso options invalid");
  }
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("SweepSpec: values must be nonempty");
  if (methods.empty()) throw std::invalid_argument("SweepSpec: methods must be nonempty");
  if (n_trials < 1) throw std::invalid_argument("SweepSpec: n_trials must be >= 1");
  if (threads < 1) throw std::invalid_argument("SweepSpec: threads must be >= 1");
  settings.validate();
  for (double v : values) apply_swept_value(base, swept, v).validate();
}

TrialRealization realize_trial(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  TrialRealization r;
  RandomStream channel_rng = substream(seed, Substream::kChannel);
  RandomStream fault_rng = substream(seed, Substream::kFaults);
  RandomStream combining_rng = substream(seed, Substream::kCombining);
  RandomStream noise_rng = substream(seed, Substream::kNoise);
  RandomStream csi_rng = substream(seed, Substream::kCsiError);

  r.channel = sample_channel(cfg, channel_rng);
  r.faults = sample_fault_pattern(cfg, fault_rng);
  const CMatrix f = sample_combining_matrix(cfg, combining_rng);
  r.meas = measure(r.channel.h, r.faults.deviation, f, NoiseModel{cfg.snr_db, cfg.noiseless},
                   noise_rng);
  r.meas.seed = seed;
  r.csi = perturb_csi(r.channel, cfg.gain_error_intensity, cfg.aoa_error_intensity, csi_rng);
  return r;
}

std::uint64_t realization_hash(const TrialRealization& r) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv_matrix(h, r.channel.h);
  fnv_matrix(h, r.faults.deviation);
  fnv_matrix(h, r.meas.combining);
  fnv_matrix(h, r.meas.received);
  return h;
}

TrialOutcome run_method(const TrialRealization& r, const ScenarioConfig& cfg, Method method,
                        const MethodSettings& settings) {
  TrialOutcome out;
  const auto start = std::chrono::steady_clock::now();
  switch (method) {
    case Method::kProposed: {
      DiagnosisResult d = diagnose(r.meas, settings.solver);
      out.hf_hat = std::move(d.hf_hat);
      out.h_hat = std::move(d.h_hat);
      out.iterations = d.iterations;
      out.converged = d.converged;
      break;
    }
    case Method::kFullCsi: {
      BaselineResult b = full_csi_diagnose(r.meas, r.csi, settings.baseline_lambda,
                                           cfg.element_spacing, settings.baseline_lasso);
      out.hf_hat = std::move(b.hf_hat);
      out.h_hat = std::move(b.h_hat);
      out.iterations = b.iterations;
      out.converged = b.converged;
      break;
    }
    case Method::kPartialCsi: {
      BaselineResult b = partial_csi_diagnose(r.meas, r.csi.aoas, settings.baseline_lambda,
                                              cfg.element_spacing, settings.baseline_lasso);
      out.hf_hat = std::move(b.hf_hat);
      out.h_hat = std::move(b.h_hat);
      out.iterations = b.iterations;
      out.converged = b.converged && !b.insufficient_measurements;
      break;
    }
    case Method::kGrid: {
      const int n = cfg.n_antennas;
      GridDiagnosis g = joint_grid_diagnose(
          r.meas, settings.grid_oversampling * n, settings.solver.atomic_weight(n),
          settings.solver.lambda, cfg.element_spacing, settings.baseline_lasso);
      out.hf_hat = std::move(g.hf_hat);
      out.h_hat = std::move(g.h_hat);
      out.iterations = g.iterations;
      out.converged = g.converged;
      break;
    }
  }
  out.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const FaultVerdict verdict = classify_faults(out.hf_hat, settings.detection_threshold);
  out.score = score_trial(verdict, r.faults, out.h_hat, r.channel.h);
  return out;
}

TrialOutcome run_trial(const ScenarioConfig& cfg, Method method, std::uint64_t seed,
                       const MethodSettings& settings) {
  return run_method(realize_trial(cfg, seed), cfg, method, settings);
}

ResultRow aggregate(Method method, SweptParam swept, double value,
                    const std::vector<TrialOutcome>& trials, bool record_runtime) {
  if (trials.empty()) throw std::invalid_argument("aggregate: no trials");
  ResultRow row;
  row.method = method;
  row.swept = swept;
  row.swept_value = value;
  row.n_trials = static_cast<int>(trials.size());
  int successes = 0;
  double nmse = 0.0, iters = 0.0, runtime = 0.0;
  for (const auto& t : trials) {
    successes += t.score.success ? 1 : 0;
    nmse += t.score.channel_nmse;
    iters += t.iterations;
    runtime += t.runtime_s;
  }
  const double n = row.n_trials;
  row.success_rate = successes / n;
  const ProportionInterval ci = wilson_interval(successes, row.n_trials);
  row.ci_low = ci.low;
  row.ci_high = ci.high;
  row.mean_nmse = nmse / n;
  row.mean_iterations = iters / n;
  row.mean_runtime_s = record_runtime ? runtime / n : 0.0;
  return row;
}

namespace {

std::vector<TrialOutcome> run_trials(const ScenarioConfig& cfg, Method method, int n_trials,
                                     std::uint64_t master_seed, const MethodSettings& settings,
                                     int threads) {
  std::vector<TrialOutcome> out(static_cast<std::size_t>(n_trials));
  auto work = [&](int t) {
    out[static_cast<std::size_t>(t)] =
        run_trial(cfg, method, trial_seed(master_seed, static_cast<std::uint64_t>(t)), settings);
  };
  if (threads <= 1 || n_trials == 1) {
    for (int t = 0; t < n_trials; ++t) work(t);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(threads, n_trials); ++w) {
    pool.emplace_back([&, w] {
      (void)w;
      for (int t = next++; t < n_trials && !failed; t = next++) {
        try {
          work(t);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

ResultRow run_point(const ScenarioConfig& cfg, Method method, int n_trials,
                    std::uint64_t master_seed, const MethodSettings& settings,
                    bool record_runtime, int threads, SweptParam label) {
  if (n_trials < 1) throw std::invalid_argument("run_point: n_trials must be >= 1");
  cfg.validate();
  settings.validate();
  double value = 0.0;
  switch (label) {
    case SweptParam::kNMeasurements: value = cfg.n_measurements; break;
    case SweptParam::kSnrDb: value = cfg.snr_db; break;
    case SweptParam::kGainErrorIntensity: value = cfg.gain_error_intensity; break;
    case SweptParam::kAoaErrorIntensity: value = cfg.aoa_error_intensity; break;
    case SweptParam::kNPaths: value = cfg.n_paths; break;
  }
  return aggregate(method, label, value,
                   run_trials(cfg, method, n_trials, master_seed, settings, threads),
                   record_runtime);
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<ResultRow> rows;
  for (Method m : spec.methods) {
    for (double v : spec.values) {
      const ScenarioConfig cfg = apply_swept_value(spec.base, spec.swept, v);
      rows.push_back(aggregate(
          m, spec.swept, v,
          run_trials(cfg, m, spec.n_trials, spec.master_seed, spec.settings, spec.threads),
          spec.record_runtime));
    }
  }
  return rows;
}

std::string format_csv_row(const ResultRow& row) {
  std::string s;
  s += method_name(row.method);
  s += ',';
  s += swept_param_name(row.swept);
  for (double x : {row.swept_value, row.success_rate, row.ci_low, row.ci_high, row.mean_nmse,
                   row.mean_iterations, row.mean_runtime_s}) {
    s += ',';
    s += fmt(x);
  }
  s += ',';
  s += std::to_string(row.n_trials);
  return s;
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) os << format_csv_row(r) << '\n';
}

}  // namespace blinddiag
