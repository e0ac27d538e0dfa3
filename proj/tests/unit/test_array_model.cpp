// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "blinddiag/array_model.hpp"
#include "oracles.hpp"

using namespace blinddiag;

namespace {

bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("steering_vector examples") {
  const CVector a = steering_vector(0.0, 4, 0.5);
  for (int n = 0; n < 4; ++n) CHECK(near(a[n], 1.0));

  const CVector b = steering_vector(kPi / 2, 2, 0.5);
  CHECK(near(b[0], 1.0));
  CHECK(near(b[1], -1.0));

  const CVector c = steering_vector(kPi / 6, 3, 0.5);
  CHECK(near(c[0], 1.0));
  CHECK(near(c[1], Complex(0, 1)));
  CHECK(near(c[2], -1.0));
}

TEST_CASE("steering_vector rejects angles outside the half circle") {
  CHECK_THROWS_AS(steering_vector(kPi / 2 + 1e-6, 4), std::domain_error);
  CHECK_THROWS_AS(steering_vector(-2.0, 4), std::domain_error);
  CHECK_NOTHROW(steering_response(2.0, 4));
}

TEST_CASE("steering_vector symmetry and norm") {
  RandomStream rng(11);
  for (int i = 0; i < 100; ++i) {
    const double theta = rng.uniform(-kPi / 2, kPi / 2);
    const int n = 1 + i % 40;
    const CVector p = steering_vector(theta, n);
    const CVector m = steering_vector(-theta, n);
    CHECK((m - p.conjugate()).norm() <= 1e-12);
    CHECK(std::abs(p.squaredNorm() - n) <= 1e-10);
  }
}

TEST_CASE("ScenarioConfig validation") {
  ScenarioConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  for (auto mutate : std::vector<void (*)(ScenarioConfig&)>{
           [](ScenarioConfig& c) { c.n_antennas = 0; },
           [](ScenarioConfig& c) { c.n_measurements = 0; },
           [](ScenarioConfig& c) { c.n_paths = 0; },
           [](ScenarioConfig& c) { c.n_faults = -1; },
           [](ScenarioConfig& c) { c.n_faults = c.n_antennas + 1; },
           [](ScenarioConfig& c) { c.fault_amp_range = {0.0, 1.0}; },
           [](ScenarioConfig& c) { c.fault_amp_range = {0.8, 0.5}; },
           [](ScenarioConfig& c) { c.gain_error_intensity = -0.1; },
           [](ScenarioConfig& c) { c.aoa_error_intensity = -0.1; }}) {
    ScenarioConfig bad;
    mutate(bad);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
}

TEST_CASE("assemble_channel: forced single path gives all ones") {
  CVector g(1);
  g[0] = 1.0;
  RVector t(1);
  t[0] = 0.0;
  const ChannelRealization ch = assemble_channel(g, t, 16);
  CHECK((ch.h - CVector::Ones(16)).norm() <= 1e-14);
}

TEST_CASE("sample_channel: h equals the sum of its paths") {
  ScenarioConfig cfg;
  RandomStream rng(3);
  for (int i = 0; i < 50; ++i) {
    const ChannelRealization ch = sample_channel(cfg, rng);
    CVector sum = CVector::Zero(cfg.n_antennas);
    for (int l = 0; l < cfg.n_paths; ++l) sum += ch.gains[l] * steering_vector(ch.aoas[l], cfg.n_antennas);
    CHECK((ch.h - sum).norm() <= 1e-12 * ch.h.norm());
    for (int l = 0; l < cfg.n_paths; ++l) {
      CHECK(ch.aoas[l] >= -kPi / 2);
      CHECK(ch.aoas[l] <= kPi / 2);
    }
  }
}

TEST_CASE("sample_channel: power and AOA distribution") {
  ScenarioConfig cfg;
  cfg.n_antennas = 16;
  RandomStream rng(5);
  double power = 0.0;
  std::vector<double> aoas;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const ChannelRealization ch = sample_channel(cfg, rng);
    power += ch.h.squaredNorm() / cfg.n_antennas;
    aoas.push_back(ch.aoas[0]);
  }
  CHECK(std::abs(power / draws - 1.0) <= 0.05);
  CHECK(oracle::ks_uniform(aoas, -kPi / 2, kPi / 2) < oracle::kKsCritical01);
}

TEST_CASE("sample_fault_pattern") {
  ScenarioConfig cfg;
  RandomStream rng(9);

  SUBCASE("no faults") {
    cfg.n_faults = 0;
    const FaultPattern f = sample_fault_pattern(cfg, rng);
    CHECK(f.support.empty());
    CHECK(f.deviation.norm() == 0.0);
  }
  SUBCASE("three faults in [0.2, 1]") {
    for (int i = 0; i < 200; ++i) {
      const FaultPattern f = sample_fault_pattern(cfg, rng);
      REQUIRE(f.support.size() == 3);
      CHECK(std::set<int>(f.support.begin(), f.support.end()).size() == 3);
      CHECK(std::is_sorted(f.support.begin(), f.support.end()));
      int nonzero = 0;
      for (int n = 0; n < cfg.n_antennas; ++n) {
        const double mag = std::abs(f.deviation[n]);
        const bool on = std::find(f.support.begin(), f.support.end(), n) != f.support.end();
        if (on) {
          CHECK(mag >= 0.2);
          CHECK(mag <= 1.0);
        } else {
          CHECK(f.deviation[n] == Complex(0.0));
        }
        nonzero += mag > 0.0;
      }
      CHECK(nonzero == 3);
    }
  }
  SUBCASE("uniform location") {
    cfg.n_antennas = 8;
    cfg.n_faults = 1;
    std::vector<int> counts(8, 0);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++counts[sample_fault_pattern(cfg, rng).support[0]];
    for (int c : counts) CHECK(std::abs(double(c) / draws - 1.0 / 8) <= 0.02);
  }
}

TEST_CASE("sample_combining_matrix") {
  ScenarioConfig cfg;
  cfg.n_measurements = 32;
  RandomStream rng(13);
  const CMatrix f = sample_combining_matrix(cfg, rng);
  REQUIRE(f.rows() == 32);
  REQUIRE(f.cols() == 64);
  std::vector<double> phases;
  for (Eigen::Index r = 0; r < f.rows(); ++r) {
    CHECK(std::abs(f.row(r).norm() - 1.0) <= 1e-12);
    for (Eigen::Index c = 0; c < f.cols(); ++c) {
      CHECK(std::abs(std::abs(f(r, c)) - 1.0 / 8.0) <= 1e-15);
    }
  }
  cfg.n_measurements = 200;
  const CMatrix g = sample_combining_matrix(cfg, rng);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    double p = std::arg(g.data()[i]);
    if (p < 0) p += 2 * kPi;
    phases.push_back(p);
  }
  CHECK(phases.size() >= 10000);
  CHECK(oracle::ks_uniform(phases, 0.0, 2 * kPi) < oracle::kKsCritical01);
}

TEST_CASE("sample_combining_matrix: options") {
  ScenarioConfig cfg;
  cfg.n_measurements = 4;
  cfg.n_antennas = 8;
  RandomStream rng(21);

  cfg.combining_normalization = CombiningNormalization::kElement;
  const CMatrix e = sample_combining_matrix(cfg, rng);
  CHECK((e.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-15);

  cfg.combining_normalization = CombiningNormalization::kRow;
  cfg.phase_bits = 2;
  const CMatrix q = sample_combining_matrix(cfg, rng);
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    const double steps = std::arg(q.data()[i]) / (kPi / 2);
    CHECK(std::abs(steps - std::round(steps)) <= 1e-9);
  }
}

TEST_CASE("measure examples") {
  ScenarioConfig cfg;
  cfg.n_antennas = 8;
  cfg.n_measurements = 6;
  RandomStream rng(17);
  const CMatrix f = sample_combining_matrix(cfg, rng);
  const ChannelRealization ch = sample_channel(cfg, rng);

  SUBCASE("noiseless, no faults") {
    const MeasurementSet m = measure(ch.h, CVector::Zero(8), f, {30.0, true}, rng);
    CHECK((m.received - f * ch.h).norm() == 0.0);
  }
  SUBCASE("single all-equal row") {
    const CMatrix row = CMatrix::Constant(1, 8, 1.0 / std::sqrt(8.0));
    const MeasurementSet m = measure(steering_vector(0.0, 8), CVector::Zero(8), row, {0.0, true}, rng);
    CHECK(near(m.received[0], std::sqrt(8.0)));
  }
  SUBCASE("noise variance at 0 dB") {
    const CMatrix one = CMatrix::Constant(1, 8, 1.0 / std::sqrt(8.0));
    double sum = 0.0;
    Complex mean = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
      const Complex y = measure(CVector::Zero(8), CVector::Zero(8), one, {0.0, false}, rng).received[0];
      sum += std::norm(y);
      mean += y;
    }
    mean /= double(draws);
    CHECK(std::abs(sum / draws - std::norm(mean) - 1.0) <= 0.05);
  }
  SUBCASE("determinism") {
    RandomStream a(99), b(99);
    const MeasurementSet m1 = measure(ch.h, CVector::Zero(8), f, {10.0, false}, a);
    const MeasurementSet m2 = measure(ch.h, CVector::Zero(8), f, {10.0, false}, b);
    CHECK(m1.received == m2.received);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(measure(CVector::Zero(7), CVector::Zero(8), f, {30.0, false}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(measure(ch.h, CVector::Zero(8), f, {INFINITY, false}, rng),
                    std::invalid_argument);
    CHECK_NOTHROW(measure(ch.h, CVector::Zero(8), f, {INFINITY, true}, rng));
  }
}

TEST_CASE("perturb_csi") {
  ScenarioConfig cfg;
  RandomStream rng(23);
  const ChannelRealization ch = sample_channel(cfg, rng);

  SUBCASE("zero intensity is the identity") {
    const CsiEstimate e = perturb_csi(ch, 0.0, 0.0, rng);
    CHECK(e.gains == ch.gains);
    CHECK(e.aoas == ch.aoas);
  }
  SUBCASE("error variances") {
    const double da = 0.2, dt = 0.1;
    double va = 0.0, vt = 0.0, mt = 0.0;
    int count = 0;
    for (int i = 0; i < 10000; ++i) {
      const CsiEstimate e = perturb_csi(ch, da, dt, rng);
      for (int l = 0; l < cfg.n_paths; ++l) {
        va += std::norm(e.gains[l] - ch.gains[l]);
        const double d = e.aoas[l] - ch.aoas[l];
        vt += d * d;
        mt += d;
        ++count;
      }
    }
    mt /= count;
    CHECK(std::abs(va / count / (da * da) - 1.0) <= 0.05);
    CHECK(std::abs((vt / count - mt * mt) / (dt * dt * kPi * kPi) - 1.0) <= 0.05);
  }
  SUBCASE("AOA draws do not depend on the gain intensity") {
    RandomStream a(5), b(5);
    const CsiEstimate e1 = perturb_csi(ch, 0.0, 0.3, a);
    const CsiEstimate e2 = perturb_csi(ch, 0.7, 0.3, b);
    CHECK(e1.aoas == e2.aoas);
  }
}

TEST_CASE("seed derivation") {
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
  CHECK(trial_seed(7, 3) == trial_seed(7, 3));
  RandomStream a = substream(42, Substream::kChannel);
  RandomStream b = substream(42, Substream::kNoise);
  CHECK(a.engine()() != b.engine()());
}
