// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "blinddiag/kernels.hpp"

namespace blinddiag::kernels {

#if defined(BLINDDIAG_HAVE_AVX2)
namespace detail {
const KernelTable& avx2_table_impl();
}
#endif

namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* choose_default() {
  if (const char* env = std::getenv("BLINDDIAG_ISA")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && isa_supported(Isa::kAvx2)) return &avx2_table();
  }
  if (isa_supported(Isa::kAvx2)) return &avx2_table();
  return &scalar_table();
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2:
#if defined(BLINDDIAG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& avx2_table() {
#if defined(BLINDDIAG_HAVE_AVX2)
  if (isa_supported(Isa::kAvx2)) return detail::avx2_table_impl();
#endif
  throw std::runtime_error("AVX2/FMA kernels are not available on this machine");
}

const KernelTable& active() {
  const KernelTable* table = g_active.load(std::memory_order_acquire);
  if (table == nullptr) {
    const KernelTable* chosen = choose_default();
    const KernelTable* expected = nullptr;
    g_active.compare_exchange_strong(expected, chosen, std::memory_order_acq_rel);
    table = g_active.load(std::memory_order_acquire);
  }
  return *table;
}

void select(Isa isa) {
  g_active.store(isa == Isa::kAvx2 ? &avx2_table() : &scalar_table(), std::memory_order_release);
}

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

void gemv(const CMatrix& a, const CVector& x, CVector& y) {
  if (x.size() != a.cols()) throw std::invalid_argument("gemv: dimension mismatch");
  y.resize(a.rows());
  active().gemv(view(a), x.data(), y.data());
}

void gemv_adjoint(const CMatrix& a, const CVector& x, CVector& y) {
  if (x.size() != a.rows()) throw std::invalid_argument("gemv_adjoint: dimension mismatch");
  y.resize(a.cols());
  active().gemv_adjoint(view(a), x.data(), y.data());
}

void soft_threshold(const CVector& in, double kappa, CVector& out) {
  out.resize(in.size());
  active().soft_threshold(in.data(), &kappa, false, static_cast<int>(in.size()), out.data());
}

void soft_threshold(const CVector& in, const RVector& kappa, CVector& out) {
  if (kappa.size() != in.size()) throw std::invalid_argument("soft_threshold: weight length");
  out.resize(in.size());
  active().soft_threshold(in.data(), kappa.data(), true, static_cast<int>(in.size()), out.data());
}

CVector subdiag_sums(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("subdiag_sums: matrix must be square");
  CVector out(m.rows());
  active().subdiag_sums(view(m), out.data());
  return out;
}

}  // namespace blinddiag::kernels
