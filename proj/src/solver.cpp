// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "blinddiag/kernels.hpp"

namespace blinddiag {

namespace {

CMatrix checked_combining(const MeasurementSet& meas) {
  if (meas.combining.rows() < 1 || meas.combining.cols() < 1) {
    throw std::invalid_argument("diagnose: combining matrix is empty");
  }
  if (meas.received.size() != meas.combining.rows()) {
    throw std::invalid_argument("diagnose: received vector does not match combining matrix");
  }
  if (meas.combining.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("diagnose: combining matrix is all zero");
  }
  return meas.combining;
}

Eigen::LLT<CMatrix> factor_h_step(const CMatrix& f, double rho) {
  CMatrix gram = f.adjoint() * f;
  gram.diagonal().array() += 2.0 * rho;
  Eigen::LLT<CMatrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("diagnose: factorization of F^H F + 2 rho I failed");
  }
  return llt;
}

}  // namespace

double SolverConfig::atomic_weight(int n_antennas) const {
  return atoms == AtomNormalization::kUnitNorm ? tau * std::sqrt(double(n_antennas)) : tau;
}

void SolverConfig::validate() const {
  if (tau < 0.0 || lambda < 0.0) throw std::invalid_argument("SolverConfig: tau, lambda must be >= 0");
  if (!(rho > 0.0)) throw std::invalid_argument("SolverConfig: rho must be positive");
  if (!(epsilon > 0.0) || !(residual_tolerance > 0.0) || !(inner.tolerance > 0.0)) {
    throw std::invalid_argument("SolverConfig: tolerances must be positive");
  }
  if (max_iterations < 1 || inner.max_iterations < 1) {
    throw std::invalid_argument("SolverConfig: iteration caps must be >= 1");
  }
  if (!(inner.rho > 0.0)) throw std::invalid_argument("SolverConfig: inner rho must be positive");
}

BlindDiagnoser::BlindDiagnoser(const MeasurementSet& meas, const SolverConfig& cfg)
    : combining_(checked_combining(meas)),
      received_(meas.received),
      cfg_((cfg.validate(), cfg)),
      atomic_weight_(cfg.atomic_weight(static_cast<int>(meas.combining.cols()))),
      psi_(subdiag_weights(static_cast<int>(meas.combining.cols()))),
      h_step_(factor_h_step(combining_, cfg.rho)),
      inner_(combining_, cfg.inner) {}

SolverState BlindDiagnoser::initial_state() const {
  const int n = n_antennas();
  SolverState s;
  s.u = CVector::Zero(n);
  s.h = CVector::Zero(n);
  s.hf = CVector::Zero(n);
  s.z = LiftedMatrix(n);
  s.multiplier = LiftedMatrix(n);
  return s;
}

void BlindDiagnoser::iterate(SolverState& s) const {
  const int n = n_antennas();
  const double rho = cfg_.rho;
  const double tau = atomic_weight_;
  const CMatrix& z = s.z.matrix();
  const CMatrix& lam = s.multiplier.matrix();

  // v-step
  const double v = z(n, n).real() + (lam(n, n).real() - tau / 2.0) / rho;

  // u-step
  CVector sums = toeplitz_adjoint(s.z.block() + s.multiplier.block() / rho);
  CVector u(n);
  if (cfg_.u_update == UUpdateRule::kDerived) {
    sums[0] -= tau / (2.0 * rho);
    u = sums.cwiseQuotient(psi_.cast<Complex>());
  } else {
    u = sums.cwiseQuotient(psi_.cast<Complex>());
    u[0] -= tau / (2.0 * rho);
  }
  u[0] = u[0].real();

  // h-step
  CVector residual = received_;
  CVector tmp;
  kernels::gemv(combining_, s.hf, tmp);
  residual -= tmp;
  CVector rhs;
  kernels::gemv_adjoint(combining_, residual, rhs);
  rhs += 2.0 * s.multiplier.column() + 2.0 * rho * s.z.column();
  CVector h = h_step_.solve(rhs);

  // h_f-step: LASSO on what the channel estimate leaves unexplained.
  kernels::gemv(combining_, h, tmp);
  const CVector lasso_rhs = received_ - tmp;
  LassoResult inner = inner_.solve(lasso_rhs, cfg_.lambda, s.inner);

  // Z-step
  const LiftedMatrix b = LiftedMatrix::assemble(u, h, v);
  const CMatrix g = b.matrix() - lam / rho;
  CMatrix z_next = project_psd(g);

  // Lambda-step
  const CMatrix gap = z_next - b.matrix();
  CMatrix lam_next = lam + rho * gap;

  s.primal_residual = gap.norm();
  s.dual_residual = rho * (z_next - z).norm();
  s.hf_step = (inner.x - s.hf).norm();
  s.v = v;
  s.u = std::move(u);
  s.h = std::move(h);
  s.hf = inner.x;
  s.inner = std::move(inner);
  s.z.matrix() = std::move(z_next);
  s.multiplier.matrix() = std::move(lam_next);
  ++s.iteration;
}

bool BlindDiagnoser::halted(const SolverState& s) const {
  return s.iteration >= 1 && s.hf_step <= cfg_.epsilon &&
         s.primal_residual <= cfg_.residual_tolerance &&
         s.dual_residual <= cfg_.residual_tolerance;
}

double BlindDiagnoser::objective(const SolverState& s) const {
  const double fit = 0.5 * (received_ - combining_ * (s.h + s.hf)).squaredNorm();
  const double atomic = 0.5 * (s.u[0].real() + s.v);  // tr T(u)/N = u_1
  return fit + atomic_weight_ * atomic + cfg_.lambda * s.hf.cwiseAbs().sum();
}

DiagnosisResult BlindDiagnoser::run() const {
  SolverState s = initial_state();
  bool converged = false;
  while (s.iteration < cfg_.max_iterations) {
    iterate(s);
    if (halted(s)) {
      converged = true;
      break;
    }
  }
  DiagnosisResult out;
  out.h_hat = s.h;
  out.hf_hat = s.hf;
  out.u_hat = s.u;
  out.v_hat = s.v;
  out.converged = converged;
  out.iterations = s.iteration;
  out.primal_residual = s.primal_residual;
  out.dual_residual = s.dual_residual;
  out.objective = objective(s);
  return out;
}

CVector BlindDiagnoser::lagrangian_gradient_h(const CVector& h, const CVector& hf,
                                              const LiftedMatrix& z,
                                              const LiftedMatrix& multiplier) const {
  const double rho = cfg_.rho;
  // d/d conj(h): the data term plus both off-diagonal blocks of <Lambda, Z - B>
  // and rho/2 ||Z - B||^2.
  const CVector fit = -combining_.adjoint() * (received_ - combining_ * (h + hf));
  return fit - 2.0 * CVector(multiplier.column()) - 2.0 * rho * (CVector(z.column()) - h);
}

SolverState admm_iterate(const SolverState& state, const MeasurementSet& meas,
                         const SolverConfig& cfg) {
  const BlindDiagnoser solver(meas, cfg);
  if (state.h.size() != solver.n_antennas() || state.z.n() != solver.n_antennas()) {
    throw std::invalid_argument("admm_iterate: state does not match the measurement set");
  }
  SolverState next = state;
  solver.iterate(next);
  return next;
}

DiagnosisResult diagnose(const MeasurementSet& meas, const SolverConfig& cfg) {
  return BlindDiagnoser(meas, cfg).run();
}

}  // namespace blinddiag
