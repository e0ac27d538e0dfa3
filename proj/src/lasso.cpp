// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "blinddiag/kernels.hpp"

namespace blinddiag {

Complex soft_threshold(Complex c, double kappa) {
  if (kappa < 0.0) throw std::invalid_argument("soft_threshold: kappa must be >= 0");
  const double mag = std::abs(c);
  if (!(mag > kappa)) return 0.0;
  return c * (1.0 - kappa / mag);
}

LassoSolver::LassoSolver(const CMatrix& a, const LassoOptions& options)
    : a_(a), options_(options) {
  if (a.rows() < 1 || a.cols() < 1) throw std::invalid_argument("LassoSolver: empty matrix");
  if (!(options.rho > 0.0)) throw std::invalid_argument("LassoSolver: rho must be positive");
  if (!(options.tolerance > 0.0) || options.max_iterations < 1) {
    throw std::invalid_argument("LassoSolver: tolerance must be positive and cap >= 1");
  }
  const Eigen::Index n = a.cols();
  CMatrix gram = a.adjoint() * a;
  gram.diagonal().array() += options.rho;
  Eigen::LLT<CMatrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("LassoSolver: factorization of A^H A + rho I failed");
  }
  x_step_ = llt.solve(CMatrix::Identity(n, n));
  x_step_ = 0.5 * (x_step_ + x_step_.adjoint()).eval();
}

LassoResult LassoSolver::solve(const CVector& b, double lambda) const {
  if (lambda < 0.0) throw std::invalid_argument("lasso: lambda must be >= 0");
  const RVector w = RVector::Constant(a_.cols(), lambda);
  return solve_weighted(b, w, nullptr);
}

LassoResult LassoSolver::solve(const CVector& b, double lambda, const LassoResult& warm_start) const {
  if (lambda < 0.0) throw std::invalid_argument("lasso: lambda must be >= 0");
  const RVector w = RVector::Constant(a_.cols(), lambda);
  return solve_weighted(b, w, &warm_start);
}

LassoResult LassoSolver::solve_weighted(const CVector& b, const RVector& weights,
                                        const LassoResult* warm_start) const {
  const Eigen::Index n = a_.cols();
  if (b.size() != a_.rows()) throw std::invalid_argument("lasso: b does not match A");
  if (weights.size() != n || (weights.array() < 0.0).any()) {
    throw std::invalid_argument("lasso: weights must be nonnegative, one per column");
  }
  const double rho = options_.rho;
  const RVector kappa = weights / rho;

  CVector atb;
  kernels::gemv_adjoint(a_, b, atb);

  LassoResult res;
  if (warm_start != nullptr && warm_start->x.size() == n && warm_start->dual.size() == n) {
    res.x = warm_start->x;
    res.dual = warm_start->dual;
  } else {
    res.x = CVector::Zero(n);
    res.dual = CVector::Zero(n);
  }

  CVector& z = res.x;
  CVector& u = res.dual;
  CVector rhs(n), x(n), z_prev(n), shifted(n);
  for (int it = 1; it <= options_.max_iterations; ++it) {
    rhs = atb + rho * (z - u);
    kernels::gemv(x_step_, rhs, x);
    z_prev = z;
    shifted = x + u;
    kernels::soft_threshold(shifted, kappa, z);
    u += x - z;
    res.iterations = it;
    const double primal = (x - z).norm();
    const double dual = rho * (z - z_prev).norm();
    if (primal <= options_.tolerance && dual <= options_.tolerance) {
      res.converged = true;
      break;
    }
  }
  return res;
}

CVector lasso(const CMatrix& a, const CVector& b, double lambda, const LassoOptions& options) {
  return LassoSolver(a, options).solve(b, lambda).x;
}

double lasso_objective(const CMatrix& a, const CVector& b, const CVector& x, double lambda) {
  return 0.5 * (b - a * x).squaredNorm() + lambda * x.cwiseAbs().sum();
}

LassoCertificate lasso_certificate(const CMatrix& a, const CVector& b, const CVector& x,
                                   double support_floor) {
  const CVector corr = a.adjoint() * (b - a * x);
  LassoCertificate cert;
  cert.max_correlation = corr.cwiseAbs().maxCoeff();
  cert.min_support_correlation = std::numeric_limits<double>::infinity();
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    if (std::abs(x[n]) <= support_floor) continue;
    // On the support A_n^H r must point along x_n.
    const double angle = std::abs(std::arg(corr[n] * std::conj(x[n])));
    cert.max_phase_error = std::max(cert.max_phase_error, angle);
    cert.min_support_correlation = std::min(cert.min_support_correlation, std::abs(corr[n]));
  }
  return cert;
}

bool LassoCertificate::satisfied(double lambda, double rel_tol, double phase_tol) const {
  if (max_correlation > lambda * (1.0 + rel_tol)) return false;
  if (max_phase_error > phase_tol) return false;
  if (std::isfinite(min_support_correlation) && min_support_correlation < lambda * (1.0 - rel_tol)) {
    return false;
  }
  return true;
}

}  // namespace blinddiag
