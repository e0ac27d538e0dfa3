// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/spectral_ops.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "blinddiag/kernels.hpp"

namespace blinddiag {

CMatrix toeplitz(const CVector& first_column) {
  const Eigen::Index n = first_column.size();
  if (n < 1) throw std::invalid_argument("toeplitz: empty first column");
  if (std::abs(first_column[0].imag()) > kToeplitzRealTolerance) {
    throw std::invalid_argument("toeplitz: first entry must be real for a Hermitian matrix");
  }
  CMatrix t(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    t(k, k) = first_column[0].real();
    for (Eigen::Index j = k + 1; j < n; ++j) {
      t(j, k) = first_column[j - k];
      t(k, j) = std::conj(first_column[j - k]);
    }
  }
  return t;
}

CVector toeplitz_adjoint(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("toeplitz_adjoint: matrix must be square");
  return kernels::subdiag_sums(m);
}

RVector subdiag_weights(int n) {
  if (n < 1) throw std::invalid_argument("subdiag_weights: n must be >= 1");
  RVector w(n);
  for (int j = 0; j < n; ++j) w[j] = n - j;
  return w;
}

CMatrix project_psd(const CMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("project_psd: matrix must be square");
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("project_psd: Hermitian eigendecomposition did not converge");
  }
  const RVector clipped = eig.eigenvalues().cwiseMax(0.0);
  const CMatrix& v = eig.eigenvectors();
  CMatrix out = v * clipped.asDiagonal() * v.adjoint();
  // Restore exact Hermitian symmetry lost to rounding in the product.
  return 0.5 * (out + out.adjoint());
}

LiftedMatrix::LiftedMatrix(CMatrix m) : data_(std::move(m)) {
  if (data_.rows() != data_.cols() || data_.rows() < 2) {
    throw std::invalid_argument("LiftedMatrix: expected a square matrix of size >= 2");
  }
}

LiftedMatrix LiftedMatrix::assemble(const CVector& u, const CVector& h, double v) {
  if (u.size() != h.size()) throw std::invalid_argument("LiftedMatrix::assemble: size mismatch");
  const Eigen::Index n = u.size();
  LiftedMatrix out(static_cast<int>(n));
  out.data_.topLeftCorner(n, n) = toeplitz(u);
  out.data_.col(n).head(n) = h;
  out.data_.row(n).head(n) = h.adjoint();
  out.data_(n, n) = v;
  return out;
}

double LiftedMatrix::hermitian_defect() const {
  const double scale = data_.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace blinddiag
