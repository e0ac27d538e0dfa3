// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations for the tests. Nothing here shares code
// with the library routines it is compared against.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Cyclic coordinate descent for (1/2)||b - A x||^2 + lambda ||x||_1.
inline CVector lasso_cd(const CMatrix& a, const CVector& b, double lambda, int max_sweeps = 200000,
                        double tol = 1e-13) {
  const auto n = a.cols();
  CVector x = CVector::Zero(n);
  CVector r = b;
  std::vector<double> col_sq(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) col_sq[static_cast<std::size_t>(j)] = a.col(j).squaredNorm();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double biggest = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double cj = col_sq[static_cast<std::size_t>(j)];
      if (cj == 0.0) continue;
      const Complex rho = a.col(j).dot(r) + cj * x[j];  // A_j^H r + |A_j|^2 x_j
      const double mag = std::abs(rho);
      const Complex next = mag > lambda ? rho * ((mag - lambda) / mag) / cj : Complex(0.0);
      const Complex delta = next - x[j];
      if (delta != Complex(0.0)) {
        r -= a.col(j) * delta;
        x[j] = next;
        biggest = std::max(biggest, std::abs(delta));
      }
    }
    if (biggest < tol) break;
  }
  return x;
}

inline double lasso_value(const CMatrix& a, const CVector& b, const CVector& x, double lambda) {
  return 0.5 * (b - a * x).squaredNorm() + lambda * x.cwiseAbs().sum();
}

// Hermitian Toeplitz matrix written out entry by entry.
inline CMatrix toeplitz_entrywise(const CVector& u) {
  const auto n = u.size();
  CMatrix t(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) t(j, k) = j >= k ? u[j - k] : std::conj(u[k - j]);
  }
  return t;
}

// Real Frobenius inner product Re tr(A^H B).
inline double frob_inner(const CMatrix& a, const CMatrix& b) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) s += (std::conj(a(j, k)) * b(j, k)).real();
  }
  return s;
}

// One-sample Kolmogorov-Smirnov statistic sqrt(n) * D against U(lo, hi).
inline double ks_uniform(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = (xs[i] - lo) / (hi - lo);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return std::sqrt(n) * d;
}

// Asymptotic KS critical value at significance 0.01.
inline constexpr double kKsCritical01 = 1.628;

}  // namespace oracle
