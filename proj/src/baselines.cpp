// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace blinddiag {

namespace {

void check_measurements(const MeasurementSet& meas) {
  if (meas.combining.rows() < 1 || meas.combining.cols() < 1) {
    throw std::invalid_argument("baseline: combining matrix is empty");
  }
  if (meas.received.size() != meas.combining.rows()) {
    throw std::invalid_argument("baseline: received vector does not match combining matrix");
  }
}

BaselineResult from_lasso(LassoResult r) {
  BaselineResult out;
  out.hf_hat = std::move(r.x);
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

}  // namespace

BaselineResult full_csi_diagnose(const MeasurementSet& meas, const CsiEstimate& csi, double lambda,
                                 double spacing, const LassoOptions& options) {
  check_measurements(meas);
  if (csi.gains.size() != csi.aoas.size()) {
    throw std::invalid_argument("full_csi_diagnose: gains and aoas differ in length");
  }
  const int n = meas.n_antennas();
  const ChannelRealization predicted = assemble_channel(csi.gains, csi.aoas, n, spacing);
  const CVector z = meas.received - meas.combining * predicted.h;
  BaselineResult out = from_lasso(LassoSolver(meas.combining, options).solve(z, lambda));
  out.h_hat = predicted.h;
  return out;
}

CMatrix null_space_projector(const CMatrix& b) {
  const auto k = b.rows();
  CMatrix p = CMatrix::Identity(k, k);
  if (b.cols() == 0) return p;
  Eigen::JacobiSVD<CMatrix> svd(b, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return p;
  const double floor = 1e-10 * s[0];
  for (Eigen::Index i = 0; i < s.size() && s[i] > floor; ++i) {
    const CVector col = svd.matrixU().col(i);
    p.noalias() -= col * col.adjoint();
  }
  return p;
}

BaselineResult partial_csi_diagnose(const MeasurementSet& meas, const RVector& aoas, double lambda,
                                    double spacing, const LassoOptions& options) {
  check_measurements(meas);
  const int n = meas.n_antennas();
  const int k = meas.n_measurements();
  const auto l = aoas.size();
  const CMatrix steering =
      steering_matrix(std::span<const double>(aoas.data(), static_cast<std::size_t>(l)), n, spacing);
  const CMatrix b = meas.combining * steering;

  if (l >= k) {
    BaselineResult out;
    out.hf_hat = CVector::Zero(n);
    out.h_hat = CVector::Zero(n);
    out.insufficient_measurements = true;
    return out;
  }

  const CMatrix p = null_space_projector(b);
  BaselineResult out =
      from_lasso(LassoSolver(p * meas.combining, options).solve(p * meas.received, lambda));

  // Channel estimate: least-squares gains on the AOA subspace after removing
  // the recovered deviation.
  if (l == 0) {
    out.h_hat = CVector::Zero(n);
  } else {
    const CVector rest = meas.received - meas.combining * out.hf_hat;
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(b);
    cod.setThreshold(1e-10);
    out.h_hat = steering * cod.solve(rest);
  }
  return out;
}

CMatrix grid_dictionary(int n_antennas, int grid_size, double spacing) {
  if (grid_size < 1) throw std::invalid_argument("grid_dictionary: grid size must be >= 1");
  if (n_antennas < 1) throw std::invalid_argument("grid_dictionary: n_antennas must be >= 1");
  CMatrix d(n_antennas, grid_size);
  for (int g = 0; g < grid_size; ++g) {
    const double s = -1.0 + 2.0 * g / grid_size;
    d.col(g) = steering_vector(std::asin(s), n_antennas, spacing);
  }
  return d;
}

double grid_objective(const MeasurementSet& meas, const CMatrix& dictionary, const CVector& c,
                      const CVector& hf, double tau, double lambda) {
  const CVector r = meas.received - meas.combining * (dictionary * c + hf);
  return 0.5 * r.squaredNorm() + tau * c.cwiseAbs().sum() + lambda * hf.cwiseAbs().sum();
}

GridDiagnosis joint_grid_diagnose(const MeasurementSet& meas, int grid_size, double tau,
                                  double lambda, double spacing, const LassoOptions& options) {
  check_measurements(meas);
  if (tau < 0.0 || lambda < 0.0) {
    throw std::invalid_argument("joint_grid_diagnose: tau and lambda must be >= 0");
  }
  const int n = meas.n_antennas();
  const CMatrix d = grid_dictionary(n, grid_size, spacing);

  CMatrix stacked(meas.n_measurements(), grid_size + n);
  stacked.leftCols(grid_size) = meas.combining * d;
  stacked.rightCols(n) = meas.combining;
  RVector weights(grid_size + n);
  weights.head(grid_size).setConstant(tau);
  weights.tail(n).setConstant(lambda);

  const LassoResult r = LassoSolver(stacked, options).solve_weighted(meas.received, weights);

  GridDiagnosis out;
  out.coefficients = r.x.head(grid_size);
  out.hf_hat = r.x.tail(n);
  out.h_hat = d * out.coefficients;
  out.objective = grid_objective(meas, d, out.coefficients, out.hf_hat, tau, lambda);
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

}  // namespace blinddiag
