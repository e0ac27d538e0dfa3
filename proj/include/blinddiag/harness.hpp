// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "blinddiag/array_model.hpp"
#include "blinddiag/detection.hpp"
#include "blinddiag/lasso.hpp"
#include "blinddiag/solver.hpp"

namespace blinddiag {

enum class Method { kProposed, kFullCsi, kPartialCsi, kGrid };

enum class SweptParam { kNMeasurements, kSnrDb, kGainErrorIntensity, kAoaErrorIntensity, kNPaths };

std::string_view method_name(Method m);
std::string_view swept_param_name(SweptParam p);
// Both throw std::invalid_argument on an unknown name.
Method parse_method(std::string_view name);
SweptParam parse_swept_param(std::string_view name);

// Returns `base` with the swept field set. Integer fields require an
// integral value.
ScenarioConfig apply_swept_value(ScenarioConfig base, SweptParam p, double value);

struct MethodSettings {
  SolverConfig solver;
  double baseline_lambda = 0.1;
  LassoOptions baseline_lasso{1.0, 1e-6, 5000};
  double detection_threshold = 0.1;
  int grid_oversampling = 4;  // G = grid_oversampling * N

  void validate() const;
};

struct SweepSpec {
  ScenarioConfig base;
  SweptParam swept = SweptParam::kNMeasurements;
  std::vector<double> values;
  std::vector<Method> methods;
  int n_trials = 200;
  std::uint64_t master_seed = 1;
  MethodSettings settings;
  // When false, mean_runtime_s is written as 0 so reruns are byte-identical.
  bool record_runtime = true;
  int threads = 1;

  void validate() const;
};

// Every random quantity of one trial. Methods run on the same realization.
struct TrialRealization {
  ChannelRealization channel;
  FaultPattern faults;
  MeasurementSet meas;
  CsiEstimate csi;
};

TrialRealization realize_trial(const ScenarioConfig& cfg, std::uint64_t seed);

// FNV-1a over the bytes of h, h_f, F and y.
std::uint64_t realization_hash(const TrialRealization& r);

struct TrialOutcome {
  TrialScore score;
  CVector hf_hat;
  CVector h_hat;
  int iterations = 0;
  bool converged = false;
  double runtime_s = 0.0;
};

TrialOutcome run_method(const TrialRealization& r, const ScenarioConfig& cfg, Method method,
                        const MethodSettings& settings = {});

TrialOutcome run_trial(const ScenarioConfig& cfg, Method method, std::uint64_t seed,
                       const MethodSettings& settings = {});

struct ResultRow {
  Method method = Method::kProposed;
  SweptParam swept = SweptParam::kNMeasurements;
  double swept_value = 0.0;
  double success_rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_nmse = 0.0;
  double mean_iterations = 0.0;
  double mean_runtime_s = 0.0;
  int n_trials = 0;
};

// Aggregates trials in index order, so the result does not depend on the
// order in which trials finished.
ResultRow aggregate(Method method, SweptParam swept, double value,
                    const std::vector<TrialOutcome>& trials, bool record_runtime);

// One row per (method, value), methods outermost.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

// Single point: `cfg` as given, no sweep.
ResultRow run_point(const ScenarioConfig& cfg, Method method, int n_trials,
                    std::uint64_t master_seed, const MethodSettings& settings = {},
                    bool record_runtime = true, int threads = 1,
                    SweptParam label = SweptParam::kNMeasurements);

inline constexpr std::string_view kCsvHeader =
    "method,swept_param,swept_value,success_rate,ci_low,ci_high,mean_nmse,mean_iterations,"
    "mean_runtime_s,n_trials";

std::string format_csv_row(const ResultRow& row);
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);

}  // namespace blinddiag
