// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "blinddiag/lasso.hpp"
#include "blinddiag/rng.hpp"
#include "oracles.hpp"

using namespace blinddiag;

namespace {

CMatrix random_matrix(int rows, int cols, RandomStream& rng, double var = 1.0) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.complex_normal(var);
  return m;
}

}  // namespace

TEST_CASE("soft_threshold examples") {
  CHECK(std::abs(soft_threshold({1.0, 0.0}, 0.5) - Complex(0.5, 0.0)) <= 1e-15);
  CHECK(soft_threshold({0.0, 0.3}, 0.5) == Complex(0.0));
  CHECK(std::abs(soft_threshold({3.0, 4.0}, 2.5) - Complex(1.5, 2.0)) <= 1e-15);
  CHECK(soft_threshold({0.0, 0.0}, 0.0) == Complex(0.0));
  CHECK(soft_threshold({0.5, 0.0}, 0.5) == Complex(0.0));
  CHECK_THROWS_AS(soft_threshold({1.0, 0.0}, -0.1), std::invalid_argument);
}

TEST_CASE("identity operator reduces to elementwise soft thresholding") {
  RandomStream rng(1);
  const CMatrix eye = CMatrix::Identity(12, 12);
  for (double lambda : {0.0, 0.2, 0.7}) {
    const CVector b = random_matrix(12, 1, rng).col(0);
    const CVector x = lasso(eye, b, lambda, {1.0, 1e-12, 10000});
    for (int n = 0; n < 12; ++n) CHECK(std::abs(x[n] - soft_threshold(b[n], lambda)) <= 1e-9);
  }
}

TEST_CASE("large lambda gives exactly zero") {
  RandomStream rng(2);
  const CMatrix a = random_matrix(8, 16, rng);
  const CVector b = random_matrix(8, 1, rng).col(0);
  const double lmax = (a.adjoint() * b).cwiseAbs().maxCoeff();
  for (double scale : {1.0, 1.5, 10.0}) {
    const LassoResult r = LassoSolver(a).solve(b, lmax * scale);
    CHECK(r.converged);
    CHECK(r.x.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("agrees with the coordinate-descent oracle") {
  RandomStream rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const double lambda = trial % 2 ? 0.1 : 0.4;
    const CMatrix a = random_matrix(8, 16, rng, 1.0 / 8);
    const CVector b = random_matrix(8, 1, rng).col(0);
    const LassoResult r = LassoSolver(a, {1.0, 1e-9, 100000}).solve(b, lambda);
    CHECK(r.converged);
    const CVector ref = oracle::lasso_cd(a, b, lambda);
    const double f = lasso_objective(a, b, r.x, lambda);
    const double g = oracle::lasso_value(a, b, ref, lambda);
    CHECK(std::abs(f - g) <= 1e-4 * std::max(1.0, std::abs(g)));
    CHECK(lasso_certificate(a, b, r.x).satisfied(lambda));
  }
}

TEST_CASE("KKT certificate at default options") {
  RandomStream rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = trial % 2 ? 0.1 : 0.4;
    const CMatrix a = random_matrix(16, 32, rng, 1.0 / 16);
    const CVector b = random_matrix(16, 1, rng).col(0);
    const LassoResult r = LassoSolver(a).solve(b, lambda);
    CHECK(r.converged);
    const LassoCertificate c = lasso_certificate(a, b, r.x);
    CHECK(c.max_correlation <= lambda * (1 + 1e-4));
    CHECK(c.max_phase_error <= 1e-3);
  }
}

TEST_CASE("certificate rejects a non-optimal point") {
  RandomStream rng(5);
  const CMatrix a = random_matrix(8, 8, rng);
  const CVector b = random_matrix(8, 1, rng).col(0);
  CHECK_FALSE(lasso_certificate(a, b, CVector::Zero(8)).satisfied(1e-3));
}

TEST_CASE("warm start reaches the same point") {
  RandomStream rng(6);
  const CMatrix a = random_matrix(12, 20, rng, 1.0 / 12);
  const CVector b = random_matrix(12, 1, rng).col(0);
  const LassoSolver solver(a, {1.0, 1e-10, 100000});
  const LassoResult cold = solver.solve(b, 0.2);
  const CVector b2 = b + 0.01 * random_matrix(12, 1, rng).col(0);
  const LassoResult again_cold = solver.solve(b2, 0.2);
  const LassoResult warm = solver.solve(b2, 0.2, cold);
  CHECK((warm.x - again_cold.x).norm() <= 1e-7);
  CHECK(warm.iterations <= again_cold.iterations);
}

TEST_CASE("weighted problem matches the oracle on rescaled columns") {
  // sum_n w_n |x_n| with A becomes a plain LASSO in x'_n = w_n x_n / w0.
  RandomStream rng(7);
  const CMatrix a = random_matrix(10, 14, rng, 0.1);
  const CVector b = random_matrix(10, 1, rng).col(0);
  RVector w(14);
  for (int n = 0; n < 14; ++n) w[n] = n < 7 ? 0.15 : 0.45;
  const LassoResult r = LassoSolver(a, {1.0, 1e-11, 200000}).solve_weighted(b, w);
  const double w0 = 0.3;
  CMatrix scaled = a;
  for (int n = 0; n < 14; ++n) scaled.col(n) *= w0 / w[n];
  const CVector ref_scaled = oracle::lasso_cd(scaled, b, w0);
  CVector ref(14);
  for (int n = 0; n < 14; ++n) ref[n] = ref_scaled[n] * w0 / w[n];
  CHECK((r.x - ref).norm() <= 1e-5 * std::max(1.0, ref.norm()));
}

TEST_CASE("iteration cap reports non-convergence") {
  RandomStream rng(8);
  const CMatrix a = random_matrix(16, 32, rng);
  const CVector b = random_matrix(16, 1, rng).col(0);
  const LassoResult r = LassoSolver(a, {1.0, 1e-14, 3}).solve(b, 0.1);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
}

TEST_CASE("preconditions") {
  RandomStream rng(9);
  const CMatrix a = random_matrix(4, 6, rng);
  CHECK_THROWS_AS(LassoSolver(a).solve(CVector::Zero(5), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(LassoSolver(a).solve(CVector::Zero(4), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(LassoSolver(a, {0.0, 1e-6, 10}), std::invalid_argument);
  CHECK_THROWS_AS(LassoSolver(CMatrix(0, 0)), std::invalid_argument);
}
