// SPDX-License-Identifier: Apache-2.0
//
// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and must only be entered after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "blinddiag/kernels.hpp"

namespace blinddiag::kernels::detail {

namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

void gemv_avx2(MatrixView a, const Complex* x, Complex* y) {
  const int rows = a.rows;
  const int vec_rows = rows & ~1;
  for (int r = 0; r < rows; ++r) y[r] = 0.0;
  for (int c = 0; c < a.cols; ++c) {
    const Complex* col = a.data + static_cast<std::ptrdiff_t>(c) * rows;
    const double xr = x[c].real();
    const double xi = x[c].imag();
    const __m256d vxr = _mm256_set1_pd(xr);
    const __m256d vxi = _mm256_set1_pd(xi);
    int r = 0;
    for (; r < vec_rows; r += 2) {
      const __m256d va = load2(col + r);
      const __m256d vswap = _mm256_permute_pd(va, 0b0101);
      // even lanes: ar*xr - ai*xi, odd lanes: ai*xr + ar*xi
      const __m256d prod = _mm256_fmaddsub_pd(va, vxr, _mm256_mul_pd(vswap, vxi));
      store2(y + r, _mm256_add_pd(load2(y + r), prod));
    }
    for (; r < rows; ++r) {
      const double ar = col[r].real();
      const double ai = col[r].imag();
      y[r] = {y[r].real() + (ar * xr - ai * xi), y[r].imag() + (ar * xi + ai * xr)};
    }
  }
}

void gemv_adjoint_avx2(MatrixView a, const Complex* x, Complex* y) {
  const int rows = a.rows;
  const int vec_rows = rows & ~1;
  for (int c = 0; c < a.cols; ++c) {
    const Complex* col = a.data + static_cast<std::ptrdiff_t>(c) * rows;
    // s_direct accumulates [ar*xr, ai*xi, ...], s_cross [ar*xi, ai*xr, ...].
    __m256d s_direct = _mm256_setzero_pd();
    __m256d s_cross = _mm256_setzero_pd();
    int r = 0;
    for (; r < vec_rows; r += 2) {
      const __m256d va = load2(col + r);
      const __m256d vx = load2(x + r);
      s_direct = _mm256_fmadd_pd(va, vx, s_direct);
      s_cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vx, 0b0101), s_cross);
    }
    alignas(32) double d[4];
    alignas(32) double s[4];
    _mm256_store_pd(d, s_direct);
    _mm256_store_pd(s, s_cross);
    double re = (d[0] + d[2]) + (d[1] + d[3]);
    double im = (s[0] + s[2]) - (s[1] + s[3]);
    for (; r < rows; ++r) {
      const double ar = col[r].real();
      const double ai = col[r].imag();
      re += ar * x[r].real() + ai * x[r].imag();
      im += ar * x[r].imag() - ai * x[r].real();
    }
    y[c] = {re, im};
  }
}

void soft_threshold_avx2(const Complex* in, const double* kappa, bool per_element, int n,
                         Complex* out) {
  const int vec_n = n & ~1;
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  int i = 0;
  for (; i < vec_n; i += 2) {
    const __m256d v = load2(in + i);
    const __m256d sq = _mm256_mul_pd(v, v);
    // [re^2 + im^2] duplicated into both lanes of each complex
    const __m256d mag2 = _mm256_add_pd(sq, _mm256_permute_pd(sq, 0b0101));
    const __m256d mag = _mm256_sqrt_pd(mag2);
    const __m256d k = per_element ? _mm256_setr_pd(kappa[i], kappa[i], kappa[i + 1], kappa[i + 1])
                                  : _mm256_set1_pd(kappa[0]);
    const __m256d keep = _mm256_cmp_pd(mag, k, _CMP_GT_OQ);
    const __m256d shrink = _mm256_sub_pd(one, _mm256_div_pd(k, mag));
    store2(out + i, _mm256_mul_pd(v, _mm256_blendv_pd(zero, shrink, keep)));
  }
  for (; i < n; ++i) {
    const double k = per_element ? kappa[i] : kappa[0];
    const double re = in[i].real();
    const double im = in[i].imag();
    const double mag = std::sqrt(re * re + im * im);
    const double shrink = mag > k ? 1.0 - k / mag : 0.0;
    out[i] = {re * shrink, im * shrink};
  }
}

void subdiag_sums_avx2(MatrixView m, Complex* out) {
  const int n = m.rows;
  for (int i = 0; i < n; ++i) out[i] = 0.0;
  for (int c = 0; c < n; ++c) {
    const Complex* col = m.data + static_cast<std::ptrdiff_t>(c) * n + c;
    const int len = n - c;
    const int vec_len = len & ~1;
    int j = 0;
    for (; j < vec_len; j += 2) store2(out + j, _mm256_add_pd(load2(out + j), load2(col + j)));
    for (; j < len; ++j) out[j] += col[j];
  }
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{Isa::kAvx2, gemv_avx2, gemv_adjoint_avx2, soft_threshold_avx2,
                                 subdiag_sums_avx2};
  return table;
}

}  // namespace blinddiag::kernels::detail
