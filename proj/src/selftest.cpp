// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "blinddiag/baselines.hpp"
#include "blinddiag/detection.hpp"
#include "blinddiag/kernels.hpp"
#include "blinddiag/lasso.hpp"
#include "blinddiag/spectral_ops.hpp"

namespace blinddiag {

namespace {

CMatrix random_matrix(int rows, int cols, RandomStream& rng) {
  CMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = rng.complex_normal(1.0);
  }
  return m;
}

CVector random_vector(int n, RandomStream& rng) { return random_matrix(n, 1, rng).col(0); }

CMatrix random_hermitian(int n, RandomStream& rng) {
  const CMatrix a = random_matrix(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

SelftestCheck adjoint_identity(RandomStream& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 15;
    CVector u = random_vector(n, rng);
    u[0] = u[0].real();
    const CMatrix m = random_hermitian(n, rng);
    const double direct = (toeplitz(u).adjoint() * m).trace().real();
    const CVector s = toeplitz_adjoint(m);
    double formula = u[0].real() * s[0].real();
    for (int i = 1; i < n; ++i) formula += 2.0 * (std::conj(u[i]) * s[i]).real();
    const double scale = std::max(1.0, toeplitz(u).norm() * m.norm());
    worst = std::max(worst, std::abs(direct - formula) / scale);
  }
  return {"adjoint identity <T(u), M> = <u, T*(M)>", worst <= 1e-9, worst, 1e-9};
}

SelftestCheck toeplitz_roundtrip(RandomStream& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 16;
    CVector u = random_vector(n, rng);
    u[0] = u[0].real();
    const CVector back = toeplitz_adjoint(toeplitz(u));
    const CVector expect = u.cwiseProduct(subdiag_weights(n).cast<Complex>());
    worst = std::max(worst, (back - expect).cwiseAbs().maxCoeff() / std::max(1.0, expect.norm()));
  }
  return {"T*(T(u)) = Psi u", worst <= 1e-12, worst, 1e-12};
}

SelftestCheck psd_projection(RandomStream& rng) {
  double worst = 0.0;  // positive margin means a violation
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 16;
    const CMatrix h = random_hermitian(n, rng);
    const CMatrix p = project_psd(h);
    const double scale = std::max(1.0, h.norm());
    const double min_eig = Eigen::SelfAdjointEigenSolver<CMatrix>(p).eigenvalues().minCoeff();
    worst = std::max(worst, -min_eig / scale);
    worst = std::max(worst, (project_psd(p) - p).norm() / scale);
    const double dist = (p - h).norm();
    for (int c = 0; c < 20; ++c) {
      const CMatrix g = random_matrix(n, n, rng);
      const CMatrix candidate = g * g.adjoint();
      worst = std::max(worst, (dist - (candidate - h).norm()) / scale);
    }
  }
  return {"PSD projection: PSD, idempotent, nearest", worst <= 1e-10, worst, 1e-10};
}

SelftestCheck lasso_kkt(RandomStream& rng) {
  double worst = 0.0;
  bool aligned = true;
  for (int trial = 0; trial < 20; ++trial) {
    const double lambda = trial % 2 == 0 ? 0.1 : 0.4;
    const CMatrix a = random_matrix(16, 32, rng) / 4.0;
    const CVector b = random_vector(16, rng);
    const LassoResult r = LassoSolver(a, {1.0, 1e-9, 100000}).solve(b, lambda);
    const LassoCertificate cert = lasso_certificate(a, b, r.x);
    worst = std::max(worst, cert.max_correlation / lambda - 1.0);
    aligned = aligned && cert.max_phase_error <= 1e-3;
  }
  return {"LASSO KKT certificate", aligned && worst <= 1e-4, worst, 1e-4};
}

SelftestCheck grid_oracle(std::uint64_t seed) {
  double worst = 0.0;
  bool supports = true;
  for (std::uint64_t i = 0; i < 3; ++i) {
    const OracleInstance inst = make_grid_oracle_instance(trial_seed(seed, i));
    const GridAgreement g = compare_with_grid_oracle(inst, SolverConfig{});
    supports = supports && g.support_match;
    worst = std::max(worst, g.relative_gap);
  }
  return {"solver vs grid oracle (support, objective)", supports && worst <= 1e-2,
          supports ? worst : std::numeric_limits<double>::infinity(), 1e-2};
}

SelftestCheck kernel_agreement(RandomStream& rng) {
  using namespace kernels;
  const KernelTable& s = scalar_table();
  const KernelTable& v = avx2_table();
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int rows = 1 + trial * 3, cols = 1 + trial * 5;
    const CMatrix a = random_matrix(rows, cols, rng);
    const CVector x = random_vector(cols, rng), xr = random_vector(rows, rng);
    CVector y1(rows), y2(rows), z1(cols), z2(cols);
    s.gemv(view(a), x.data(), y1.data());
    v.gemv(view(a), x.data(), y2.data());
    s.gemv_adjoint(view(a), xr.data(), z1.data());
    v.gemv_adjoint(view(a), xr.data(), z2.data());
    const double scale = std::max(1.0, a.norm() * std::max(x.norm(), xr.norm()));
    worst = std::max({worst, (y1 - y2).norm() / scale, (z1 - z2).norm() / scale});
    const CMatrix sq = random_matrix(cols, cols, rng);
    CVector d1(cols), d2(cols);
    s.subdiag_sums(view(sq), d1.data());
    v.subdiag_sums(view(sq), d2.data());
    worst = std::max(worst, (d1 - d2).norm() / std::max(1.0, sq.norm()));
  }
  return {"scalar vs AVX2 kernels", worst <= 1e-12, worst, 1e-12};
}

}  // namespace

OracleInstance make_grid_oracle_instance(std::uint64_t seed, int n_antennas, int n_measurements,
                                         int grid_size) {
  ScenarioConfig cfg;
  cfg.n_antennas = n_antennas;
  cfg.n_measurements = n_measurements;
  cfg.n_paths = 1;
  cfg.n_faults = 1;
  cfg.fault_amp_range = {1.0, 1.0};
  cfg.noiseless = true;
  cfg.validate();

  OracleInstance inst;
  RandomStream channel_rng = substream(seed, Substream::kChannel);
  inst.grid_index =
      static_cast<int>(std::floor(channel_rng.uniform(0.0, 1.0) * grid_size)) % grid_size;
  CVector gain(1);
  gain[0] = channel_rng.complex_normal(1.0);
  RVector aoa(1);
  aoa[0] = std::asin(-1.0 + 2.0 * inst.grid_index / grid_size);
  inst.channel = assemble_channel(gain, aoa, n_antennas, cfg.element_spacing);

  RandomStream fault_rng = substream(seed, Substream::kFaults);
  inst.faults = sample_fault_pattern(cfg, fault_rng);
  RandomStream combining_rng = substream(seed, Substream::kCombining);
  const CMatrix f = sample_combining_matrix(cfg, combining_rng);
  RandomStream noise_rng = substream(seed, Substream::kNoise);
  inst.meas = measure(inst.channel.h, inst.faults.deviation, f, NoiseModel{cfg.snr_db, true},
                      noise_rng);
  inst.meas.seed = seed;
  return inst;
}

GridAgreement compare_with_grid_oracle(const OracleInstance& inst, const SolverConfig& cfg,
                                       int grid_size, double support_floor) {
  const int n = inst.meas.n_antennas();
  const DiagnosisResult d = diagnose(inst.meas, cfg);
  const GridDiagnosis g =
      joint_grid_diagnose(inst.meas, grid_size, cfg.atomic_weight(n), cfg.lambda);
  GridAgreement out;
  out.solver_support = classify_faults(d.hf_hat, support_floor).flagged();
  out.grid_support = classify_faults(g.hf_hat, support_floor).flagged();
  out.support_match = out.solver_support == out.grid_support;
  out.solver_objective = d.objective;
  out.grid_objective = g.objective;
  out.relative_gap = std::abs(d.objective - g.objective) / std::max(std::abs(g.objective), 1e-12);
  out.solver_converged = d.converged;
  return out;
}

std::vector<SelftestCheck> run_selftest(std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<SelftestCheck> checks;
  checks.push_back(adjoint_identity(rng));
  checks.push_back(toeplitz_roundtrip(rng));
  checks.push_back(psd_projection(rng));
  checks.push_back(lasso_kkt(rng));
  checks.push_back(grid_oracle(seed));
  if (kernels::isa_supported(kernels::Isa::kAvx2)) checks.push_back(kernel_agreement(rng));
  return checks;
}

}  // namespace blinddiag
