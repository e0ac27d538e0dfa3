// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "blinddiag/rng.hpp"
#include "blinddiag/spectral_ops.hpp"
#include "oracles.hpp"

using namespace blinddiag;

namespace {

CMatrix random_matrix(int rows, int cols, RandomStream& rng) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.complex_normal(1.0);
  return m;
}

CMatrix random_hermitian(int n, RandomStream& rng) {
  const CMatrix a = random_matrix(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

CVector random_first_column(int n, RandomStream& rng) {
  CVector u = random_matrix(n, 1, rng).col(0);
  u[0] = u[0].real();
  return u;
}

}  // namespace

TEST_CASE("toeplitz examples") {
  CVector u(3);
  u << 1.0, 0.0, 0.0;
  CHECK((toeplitz(u) - CMatrix::Identity(3, 3)).norm() == 0.0);

  CVector v(2);
  v << 2.0, Complex(0, 1);
  CMatrix expect(2, 2);
  expect << 2.0, Complex(0, -1), Complex(0, 1), 2.0;
  CHECK((toeplitz(v) - expect).norm() == 0.0);
}

TEST_CASE("toeplitz matches the entrywise definition and is Hermitian") {
  RandomStream rng(1);
  for (int i = 0; i < 100; ++i) {
    const CVector u = random_first_column(1 + i % 20, rng);
    const CMatrix t = toeplitz(u);
    CHECK((t - oracle::toeplitz_entrywise(u)).norm() == 0.0);
    CHECK((t - t.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("toeplitz rejects a complex leading entry") {
  CVector u(2);
  u << Complex(1.0, 1e-6), 0.0;
  CHECK_THROWS_AS(toeplitz(u), std::invalid_argument);
  u[0] = Complex(1.0, 1e-12);
  CHECK(toeplitz(u)(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("toeplitz_adjoint examples") {
  const CVector s = toeplitz_adjoint(CMatrix::Identity(4, 4));
  CHECK(s[0] == Complex(4.0));
  for (int i = 1; i < 4; ++i) CHECK(s[i] == Complex(0.0));

  CMatrix m(2, 2);
  m << 0.0, 0.0, 1.0, 0.0;
  const CVector t = toeplitz_adjoint(m);
  CHECK(t[0] == Complex(0.0));
  CHECK(t[1] == Complex(1.0));

  CHECK_THROWS_AS(toeplitz_adjoint(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("subdiag_weights examples") {
  const RVector w3 = subdiag_weights(3);
  CHECK(w3[0] == 3.0);
  CHECK(w3[1] == 2.0);
  CHECK(w3[2] == 1.0);
  CHECK(subdiag_weights(1)[0] == 1.0);
}

TEST_CASE("adjoint identity on random pairs") {
  RandomStream rng(2);
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 31;
    const CVector u = random_first_column(n, rng);
    const CMatrix m = random_hermitian(n, rng);
    const CVector s = toeplitz_adjoint(m);
    double formula = u[0].real() * s[0].real();
    for (int j = 1; j < n; ++j) formula += 2.0 * (std::conj(u[j]) * s[j]).real();
    const double direct = oracle::frob_inner(oracle::toeplitz_entrywise(u), m);
    CHECK(std::abs(formula - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("toeplitz_adjoint of toeplitz scales by Psi") {
  RandomStream rng(3);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 32;
    const CVector u = random_first_column(n, rng);
    const CVector back = toeplitz_adjoint(toeplitz(u));
    const RVector w = subdiag_weights(n);
    for (int j = 0; j < n; ++j) CHECK(std::abs(back[j] - w[j] * u[j]) <= 1e-12 * std::max(1.0, w[j] * std::abs(u[j])));
  }
}

TEST_CASE("project_psd examples") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = 1.0;
  CHECK((project_psd(d) - expect).norm() <= 1e-14);

  RandomStream rng(4);
  for (int i = 0; i < 50; ++i) {
    const CMatrix g = random_matrix(1 + i % 12, 1 + i % 12, rng);
    const CMatrix p = g * g.adjoint();
    CHECK((project_psd(p) - p).norm() <= 1e-10 * std::max(1.0, p.norm()));
  }
}

TEST_CASE("project_psd properties") {
  RandomStream rng(5);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 32;
    const CMatrix h = random_hermitian(n, rng);
    const CMatrix p = project_psd(h);
    const double spec = Eigen::SelfAdjointEigenSolver<CMatrix>(h).eigenvalues().cwiseAbs().maxCoeff();
    const double min_eig = Eigen::SelfAdjointEigenSolver<CMatrix>(p).eigenvalues().minCoeff();
    CHECK(min_eig >= -1e-10 * spec);
    CHECK((project_psd(p) - p).norm() <= 1e-10 * std::max(1.0, p.norm()));
    CHECK((p - p.adjoint()).norm() == 0.0);
    const double dist = (p - h).norm();
    for (int c = 0; c < 20; ++c) {
      const CMatrix g = random_matrix(n, 1 + c % n, rng);
      CHECK(dist <= (g * g.adjoint() - h).norm() + 1e-10);
    }
  }
}

TEST_CASE("project_psd symmetrizes first") {
  RandomStream rng(6);
  const CMatrix h = random_hermitian(6, rng);
  CMatrix skewed = h;
  skewed(0, 1) += Complex(1e-11, 0);
  CHECK((project_psd(skewed) - project_psd(h)).norm() <= 1e-10);
}

TEST_CASE("LiftedMatrix") {
  RandomStream rng(7);
  const CVector u = random_first_column(5, rng);
  const CVector h = random_matrix(5, 1, rng).col(0);
  const LiftedMatrix z = LiftedMatrix::assemble(u, h, 2.5);
  CHECK(z.n() == 5);
  CHECK((CMatrix(z.block()) - toeplitz(u)).norm() == 0.0);
  CHECK((CVector(z.column()) - h).norm() == 0.0);
  CHECK(z.corner() == 2.5);
  CHECK(z.hermitian_defect() <= 1e-12);
  CHECK(LiftedMatrix(3).matrix().norm() == 0.0);
}
