// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "blinddiag/array_model.hpp"
#include "blinddiag/lasso.hpp"
#include "blinddiag/types.hpp"

namespace blinddiag {

struct BaselineResult {
  CVector hf_hat;
  CVector h_hat;  // channel estimate implied by the method, for NMSE
  int iterations = 0;
  bool converged = false;
  bool insufficient_measurements = false;
};

// Cancel the CSI-predicted channel, then LASSO on what is left:
// lasso(F, y - F sum_l alpha_l a(theta_l), lambda).
BaselineResult full_csi_diagnose(const MeasurementSet& meas, const CsiEstimate& csi, double lambda,
                                 double spacing = 0.5, const LassoOptions& options = {});

// Null out the AOA subspace in the measurement domain, then LASSO:
// lasso(P F, P y, lambda) with P = I - B B^+, B = F [a(theta_1) ... a(theta_L)].
// Never reads gains. With L >= K the result is flagged and h_f is zero.
BaselineResult partial_csi_diagnose(const MeasurementSet& meas, const RVector& aoas, double lambda,
                                    double spacing = 0.5, const LassoOptions& options = {});

// I - B B^+, with singular values below 1e-10 of the largest dropped.
CMatrix null_space_projector(const CMatrix& b);

// Columns a(theta_g), sin(theta_g) = -1 + 2g/G.
CMatrix grid_dictionary(int n_antennas, int grid_size, double spacing = 0.5);

struct GridDiagnosis {
  CVector coefficients;  // c, length G
  CVector hf_hat;
  CVector h_hat;         // D c
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

// min (1/2)||y - F(D c + h_f)||^2 + tau ||c||_1 + lambda ||h_f||_1 over (c, h_f),
// solved jointly as one weighted LASSO on [F D, F].
GridDiagnosis joint_grid_diagnose(const MeasurementSet& meas, int grid_size, double tau,
                                  double lambda, double spacing = 0.5,
                                  const LassoOptions& options = {1.0, 1e-8, 50000});

double grid_objective(const MeasurementSet& meas, const CMatrix& dictionary, const CVector& c,
                      const CVector& hf, double tau, double lambda);

}  // namespace blinddiag
