// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string_view>

#include "blinddiag/types.hpp"

// Data-parallel inner loops shared by the LASSO, the ADMM solver and the
// Toeplitz operators. Each kernel has a scalar reference implementation and,
// on x86-64, an AVX2+FMA variant chosen once at startup.
//
// Matrices are column-major (Eigen default) and passed as raw
// (data, rows, cols) views.
namespace blinddiag::kernels {

enum class Isa { kScalar, kAvx2 };

struct MatrixView {
  const Complex* data;
  int rows;
  int cols;
};

inline MatrixView view(const CMatrix& m) {
  return {m.data(), static_cast<int>(m.rows()), static_cast<int>(m.cols())};
}

using GemvFn = void (*)(MatrixView a, const Complex* x, Complex* y);
using SoftThresholdFn = void (*)(const Complex* in, const double* kappa, bool per_element,
                                 int n, Complex* out);
using SubdiagSumsFn = void (*)(MatrixView m, Complex* out);

struct KernelTable {
  Isa isa;
  GemvFn gemv;          // y = A x
  GemvFn gemv_adjoint;  // y = A^H x
  SoftThresholdFn soft_threshold;
  SubdiagSumsFn subdiag_sums;  // out[i] = sum of the i-th lower subdiagonal
};

const KernelTable& scalar_table();
// Throws std::runtime_error when the CPU or build lacks AVX2+FMA.
const KernelTable& avx2_table();

bool isa_supported(Isa isa);

// Table in use. Chosen on first call: AVX2 when supported, unless the
// BLINDDIAG_ISA environment variable is set to "scalar".
const KernelTable& active();

// Overrides the automatic choice for the rest of the process (tests, benchmarks).
void select(Isa isa);

std::string_view isa_name(Isa isa);

// Convenience wrappers on Eigen types using the active table.
void gemv(const CMatrix& a, const CVector& x, CVector& y);
void gemv_adjoint(const CMatrix& a, const CVector& x, CVector& y);
void soft_threshold(const CVector& in, double kappa, CVector& out);
void soft_threshold(const CVector& in, const RVector& kappa, CVector& out);
CVector subdiag_sums(const CMatrix& m);

}  // namespace blinddiag::kernels
