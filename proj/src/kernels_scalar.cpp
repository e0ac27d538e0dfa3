// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "blinddiag/kernels.hpp"

namespace blinddiag::kernels {

namespace {

void gemv_scalar(MatrixView a, const Complex* x, Complex* y) {
  for (int r = 0; r < a.rows; ++r) y[r] = 0.0;
  for (int c = 0; c < a.cols; ++c) {
    const Complex* col = a.data + static_cast<std::ptrdiff_t>(c) * a.rows;
    const double xr = x[c].real();
    const double xi = x[c].imag();
    for (int r = 0; r < a.rows; ++r) {
      const double ar = col[r].real();
      const double ai = col[r].imag();
      y[r] = {y[r].real() + (ar * xr - ai * xi), y[r].imag() + (ar * xi + ai * xr)};
    }
  }
}

void gemv_adjoint_scalar(MatrixView a, const Complex* x, Complex* y) {
  for (int c = 0; c < a.cols; ++c) {
    const Complex* col = a.data + static_cast<std::ptrdiff_t>(c) * a.rows;
    double re = 0.0;
    double im = 0.0;
    for (int r = 0; r < a.rows; ++r) {
      const double ar = col[r].real();
      const double ai = col[r].imag();
      re += ar * x[r].real() + ai * x[r].imag();
      im += ar * x[r].imag() - ai * x[r].real();
    }
    y[c] = {re, im};
  }
}

void soft_threshold_scalar(const Complex* in, const double* kappa, bool per_element, int n,
                           Complex* out) {
  for (int i = 0; i < n; ++i) {
    const double k = per_element ? kappa[i] : kappa[0];
    const double re = in[i].real();
    const double im = in[i].imag();
    const double mag = std::sqrt(re * re + im * im);
    const double shrink = mag > k ? 1.0 - k / mag : 0.0;
    out[i] = {re * shrink, im * shrink};
  }
}

void subdiag_sums_scalar(MatrixView m, Complex* out) {
  const int n = m.rows;
  for (int i = 0; i < n; ++i) out[i] = 0.0;
  // Column c contributes its rows c..n-1 to subdiagonals 0..n-1-c.
  for (int c = 0; c < n; ++c) {
    const Complex* col = m.data + static_cast<std::ptrdiff_t>(c) * n + c;
    for (int j = 0; j < n - c; ++j) out[j] += col[j];
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::kScalar, gemv_scalar, gemv_adjoint_scalar,
                                 soft_threshold_scalar, subdiag_sums_scalar};
  return table;
}

}  // namespace blinddiag::kernels
