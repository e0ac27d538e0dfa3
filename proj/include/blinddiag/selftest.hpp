// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blinddiag/array_model.hpp"
#include "blinddiag/solver.hpp"

namespace blinddiag {

// Small noiseless instance with one on-grid path and one unit-amplitude
// fault, where the gridded problem and the atomic-norm problem coincide.
struct OracleInstance {
  ChannelRealization channel;
  FaultPattern faults;
  MeasurementSet meas;
  int grid_index = 0;
};

OracleInstance make_grid_oracle_instance(std::uint64_t seed, int n_antennas = 8,
                                         int n_measurements = 8, int grid_size = 128);

struct GridAgreement {
  std::vector<int> solver_support;
  std::vector<int> grid_support;
  double solver_objective = 0.0;
  double grid_objective = 0.0;
  double relative_gap = 0.0;  // |solver - grid| / max(|grid|, tiny)
  bool support_match = false;
  bool solver_converged = false;
};

// Runs diagnose() and joint_grid_diagnose() on the same instance. Supports
// are the nonzero entries of h_f (magnitude above `support_floor`).
GridAgreement compare_with_grid_oracle(const OracleInstance& inst, const SolverConfig& cfg,
                                       int grid_size = 128, double support_floor = 1e-6);

struct SelftestCheck {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst observed value
  double tolerance = 0.0;  // pass iff metric <= tolerance
};

// Invariant suites: adjoint identity, PSD projection, LASSO KKT, grid-oracle
// agreement, and scalar/AVX2 kernel agreement when AVX2 is available.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed = 2024);

}  // namespace blinddiag
