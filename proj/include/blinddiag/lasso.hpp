// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "blinddiag/types.hpp"

namespace blinddiag {

// Proximal operator of kappa*|.| on one complex scalar:
// max(|c| - kappa, 0) c/|c|, and 0 at c = 0.
Complex soft_threshold(Complex c, double kappa);

struct LassoOptions {
  double rho = 1.0;
  double tolerance = 1e-6;  // on both ADMM residuals
  int max_iterations = 5000;
};

struct LassoResult {
  CVector x;
  CVector dual;  // scaled dual u; rho*u approximates A^H(b - Ax) at convergence
  int iterations = 0;
  bool converged = false;
};

// ADMM for  min_x (1/2)||b - A x||^2 + sum_n w_n |x_n|  with a fixed A.
// The x-step operator (A^H A + rho I)^{-1} is formed once at construction so
// repeated solves with new right-hand sides only cost matrix-vector products.
class LassoSolver {
 public:
  LassoSolver(const CMatrix& a, const LassoOptions& options = {});

  LassoResult solve(const CVector& b, double lambda) const;
  LassoResult solve(const CVector& b, double lambda, const LassoResult& warm_start) const;
  LassoResult solve_weighted(const CVector& b, const RVector& weights,
                             const LassoResult* warm_start = nullptr) const;

  const CMatrix& matrix() const { return a_; }
  const LassoOptions& options() const { return options_; }

 private:
  CMatrix a_;
  CMatrix x_step_;  // (A^H A + rho I)^{-1}, Hermitian
  LassoOptions options_;
};

CVector lasso(const CMatrix& a, const CVector& b, double lambda, const LassoOptions& options = {});

double lasso_objective(const CMatrix& a, const CVector& b, const CVector& x, double lambda);

// Optimality certificate for a LASSO point.
struct LassoCertificate {
  double max_correlation = 0.0;  // ||A^H (b - A x)||_inf
  double max_phase_error = 0.0;  // worst angle between A_n^H r and x_n on the support, radians
  double min_support_correlation = 0.0;  // smallest |A_n^H r| on the support
  bool satisfied(double lambda, double rel_tol = 1e-4, double phase_tol = 1e-3) const;
};

// `support_floor` drops entries whose magnitude is below it from the phase
// check, where the direction of x_n is not meaningful.
LassoCertificate lasso_certificate(const CMatrix& a, const CVector& b, const CVector& x,
                                   double support_floor = 1e-8);

}  // namespace blinddiag
