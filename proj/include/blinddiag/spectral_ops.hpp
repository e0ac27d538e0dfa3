// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "blinddiag/types.hpp"

namespace blinddiag {

// Largest tolerated |Im u_1| for a Hermitian Toeplitz first column.
inline constexpr double kToeplitzRealTolerance = 1e-9;

// T(u): Hermitian Toeplitz matrix with first column u, i.e. T_{j,k} = u_{j-k}
// for j >= k and conj(u_{k-j}) above the diagonal (0-based). u_1 must be real
// to within kToeplitzRealTolerance; its imaginary part is discarded.
CMatrix toeplitz(const CVector& first_column);

// T*(M): element i is the sum of the i-th lower subdiagonal of M (i = 0 is the
// trace). Throws std::invalid_argument for a non-square M.
CVector toeplitz_adjoint(const CMatrix& m);

// Psi: number of entries on each lower subdiagonal, [N, N-1, ..., 1].
RVector subdiag_weights(int n);

// Frobenius-nearest positive semidefinite matrix. The input is symmetrized
// first; negative eigenvalues of the symmetrized matrix are set to zero.
// Throws std::runtime_error if the eigendecomposition fails.
CMatrix project_psd(const CMatrix& h);

// (N+1)x(N+1) Hermitian matrix [[Z0, z1], [z1^H, corner]] used for both the
// lifted variable Z and the multiplier Lambda.
class LiftedMatrix {
 public:
  LiftedMatrix() = default;
  explicit LiftedMatrix(int n) : data_(CMatrix::Zero(n + 1, n + 1)) {}
  explicit LiftedMatrix(CMatrix m);

  // Assembles [[T(u), h], [h^H, v]].
  static LiftedMatrix assemble(const CVector& u, const CVector& h, double v);

  int n() const { return static_cast<int>(data_.rows()) - 1; }
  auto block() const { return data_.topLeftCorner(n(), n()); }
  auto column() const { return data_.col(n()).head(n()); }
  double corner() const { return data_(n(), n()).real(); }

  const CMatrix& matrix() const { return data_; }
  CMatrix& matrix() { return data_; }

  // Largest |M - M^H| entry relative to the largest |M| entry.
  double hermitian_defect() const;

 private:
  CMatrix data_;
};

}  // namespace blinddiag
