// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Cholesky>

#include "blinddiag/array_model.hpp"
#include "blinddiag/lasso.hpp"
#include "blinddiag/spectral_ops.hpp"
#include "blinddiag/types.hpp"

namespace blinddiag {

// Where the tau/(2 rho) e_1 term of the u-update sits relative to Psi^{-1}.
//   kDerived:   u = Psi^{-1} (T*(Z0 + Lambda0/rho) - tau/(2 rho) e_1), the exact
//               minimizer of the augmented Lagrangian for the (tr T(u)/N + v)/2
//               surrogate.
//   kAsPrinted: u = Psi^{-1} T*(Z0 + Lambda0/rho) - tau/(2 rho) e_1, which is
//               the exact step for (tr T(u) + v)/2 and so weights the atomic
//               norm by an extra sqrt(N).
enum class UUpdateRule { kDerived, kAsPrinted };

// Atoms the `tau` weight refers to.
//   kUnitNorm:    a(theta)/sqrt(N); the weight on the unit-modulus atomic norm
//                 is tau*sqrt(N).
//   kUnitModulus: a(theta) itself; the weight is tau.
enum class AtomNormalization { kUnitNorm, kUnitModulus };

struct SolverConfig {
  double tau = 0.3;
  double lambda = 0.4;
  double rho = 0.1;
  double epsilon = 1e-3;  // halting threshold on ||h_f^{(l+1)} - h_f^{(l)}||
  int max_iterations = 1000;
  // Halting also requires ||Z - B||_F and rho ||Z^{(l+1)} - Z^{(l)}||_F below this.
  double residual_tolerance = 1e-2;
  LassoOptions inner{1.0, 1e-6, 500};
  UUpdateRule u_update = UUpdateRule::kDerived;
  AtomNormalization atoms = AtomNormalization::kUnitNorm;

  // Weight on the unit-modulus-atom atomic norm for an N-element array.
  double atomic_weight(int n_antennas) const;

  void validate() const;
};

struct SolverState {
  double v = 0.0;
  CVector u;
  CVector h;
  CVector hf;
  LiftedMatrix z;
  LiftedMatrix multiplier;
  int iteration = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double hf_step = 0.0;
  LassoResult inner;  // last inner LASSO, reused as the next warm start
};

struct DiagnosisResult {
  CVector h_hat;
  CVector hf_hat;
  CVector u_hat;
  double v_hat = 0.0;
  bool converged = false;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
};

// Joint recovery of the channel (atomic norm) and the fault deviation (l1)
// from y = F (h + h_f) + w, by ADMM on the Toeplitz-lifted SDP.
//
// Everything that does not change across iterations is prepared once here:
// F^H y, the Cholesky factor of F^H F + 2 rho I for the h-step, and the inner
// LASSO operator.
class BlindDiagnoser {
 public:
  BlindDiagnoser(const MeasurementSet& meas, const SolverConfig& cfg);

  // Z = 0, Lambda = 0, h_f = 0.
  SolverState initial_state() const;

  // One pass of the v, u, h, h_f, Z, Lambda updates, in that order.
  void iterate(SolverState& state) const;

  bool halted(const SolverState& state) const;

  // 1/2 ||y - F(h + h_f)||^2 + tau_A (tr T(u)/N + v)/2 + lambda ||h_f||_1.
  double objective(const SolverState& state) const;

  DiagnosisResult run() const;

  int n_antennas() const { return static_cast<int>(combining_.cols()); }
  const SolverConfig& config() const { return cfg_; }
  double atomic_weight() const { return atomic_weight_; }

  // Gradient of the augmented Lagrangian with respect to conj(h) at the
  // given point (test hook for the h-step).
  CVector lagrangian_gradient_h(const CVector& h, const CVector& hf, const LiftedMatrix& z,
                                const LiftedMatrix& multiplier) const;

 private:
  CMatrix combining_;
  CVector received_;
  SolverConfig cfg_;
  double atomic_weight_;
  RVector psi_;
  Eigen::LLT<CMatrix> h_step_;
  LassoSolver inner_;
};

SolverState admm_iterate(const SolverState& state, const MeasurementSet& meas,
                         const SolverConfig& cfg);

DiagnosisResult diagnose(const MeasurementSet& meas, const SolverConfig& cfg = {});

}  // namespace blinddiag
