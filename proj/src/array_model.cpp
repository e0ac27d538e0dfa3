// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace blinddiag {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(n_antennas >= 1, "n_antennas must be >= 1");
  require(n_measurements >= 1, "n_measurements must be >= 1");
  require(n_paths >= 1, "n_paths must be >= 1");
  require(n_faults >= 0 && n_faults <= n_antennas, "n_faults must lie in [0, n_antennas]");
  require(fault_amp_range.first > 0.0, "fault_amp_range lower bound must be > 0");
  require(fault_amp_range.first <= fault_amp_range.second,
          "fault_amp_range lower bound must not exceed the upper bound");
  require(element_spacing > 0.0 && std::isfinite(element_spacing),
          "element_spacing must be positive");
  require(gain_error_intensity >= 0.0, "gain_error_intensity must be >= 0");
  require(aoa_error_intensity >= 0.0, "aoa_error_intensity must be >= 0");
  require(phase_bits >= 0 && phase_bits <= 24, "phase_bits must lie in [0, 24]");
  require(noiseless || std::isfinite(snr_db), "snr_db must be finite");
}

CVector steering_response(double theta, int n_antennas, double spacing) {
  if (n_antennas < 1) throw std::invalid_argument("steering vector needs n_antennas >= 1");
  CVector a(n_antennas);
  const double phase_step = 2.0 * kPi * spacing * std::sin(theta);
  for (int n = 0; n < n_antennas; ++n) a[n] = std::polar(1.0, phase_step * n);
  return a;
}

CVector steering_vector(double theta, int n_antennas, double spacing) {
  if (!(theta >= -kPi / 2 && theta <= kPi / 2)) {
    throw std::domain_error("steering_vector: angle " + std::to_string(theta) +
                            " outside [-pi/2, pi/2]");
  }
  return steering_response(theta, n_antennas, spacing);
}

CMatrix steering_matrix(std::span<const double> aoas, int n_antennas, double spacing) {
  CMatrix a(n_antennas, static_cast<Eigen::Index>(aoas.size()));
  for (std::size_t l = 0; l < aoas.size(); ++l) {
    a.col(static_cast<Eigen::Index>(l)) = steering_response(aoas[l], n_antennas, spacing);
  }
  return a;
}

ChannelRealization assemble_channel(const CVector& gains, const RVector& aoas, int n_antennas,
                                    double spacing) {
  if (gains.size() != aoas.size()) {
    throw std::invalid_argument("assemble_channel: gains and aoas differ in length");
  }
  ChannelRealization out{gains, aoas, CVector::Zero(n_antennas)};
  for (Eigen::Index l = 0; l < gains.size(); ++l) {
    out.h += gains[l] * steering_response(aoas[l], n_antennas, spacing);
  }
  return out;
}

ChannelRealization sample_channel(const ScenarioConfig& cfg, RandomStream& rng) {
  cfg.validate();
  const int paths = cfg.n_paths;
  CVector gains(paths);
  RVector aoas(paths);
  for (int l = 0; l < paths; ++l) {
    gains[l] = rng.complex_normal(1.0 / paths);
    aoas[l] = rng.uniform(-kPi / 2, kPi / 2);
  }
  return assemble_channel(gains, aoas, cfg.n_antennas, cfg.element_spacing);
}

FaultPattern sample_fault_pattern(const ScenarioConfig& cfg, RandomStream& rng) {
  cfg.validate();
  const int n = cfg.n_antennas;
  // Partial Fisher-Yates: the first n_faults slots are a uniform subset.
  std::vector<int> index(n);
  std::iota(index.begin(), index.end(), 0);
  for (int i = 0; i < cfg.n_faults; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(index[i], index[pick(rng.engine())]);
  }
  FaultPattern out;
  out.support.assign(index.begin(), index.begin() + cfg.n_faults);
  std::sort(out.support.begin(), out.support.end());
  out.deviation = CVector::Zero(n);
  const auto [lo, hi] = cfg.fault_amp_range;
  for (int idx : out.support) {
    const double amp = lo == hi ? lo : rng.uniform(lo, hi);
    const double phase = rng.uniform(0.0, 2.0 * kPi);
    out.deviation[idx] = std::polar(amp, phase);
  }
  return out;
}

CMatrix sample_combining_matrix(const ScenarioConfig& cfg, RandomStream& rng) {
  cfg.validate();
  const int k = cfg.n_measurements;
  const int n = cfg.n_antennas;
  const double modulus =
      cfg.combining_normalization == CombiningNormalization::kRow ? 1.0 / std::sqrt(double(n)) : 1.0;
  const double levels = cfg.phase_bits > 0 ? std::ldexp(1.0, cfg.phase_bits) : 0.0;
  CMatrix f(k, n);
  // Row-major draw order so the first rows do not depend on K.
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < n; ++c) {
      double phi = rng.uniform(0.0, 2.0 * kPi);
      if (levels > 0.0) {
        const double step = 2.0 * kPi / levels;
        phi = std::fmod(std::round(phi / step), levels) * step;
      }
      f(r, c) = std::polar(modulus, phi);
    }
  }
  return f;
}

MeasurementSet measure(const CVector& h, const CVector& deviation, const CMatrix& combining,
                       const NoiseModel& noise, RandomStream& rng) {
  if (h.size() != combining.cols() || deviation.size() != combining.cols()) {
    throw std::invalid_argument("measure: channel length does not match combining matrix");
  }
  if (combining.rows() < 1) throw std::invalid_argument("measure: no measurements");
  if (!noise.noiseless && !std::isfinite(noise.snr_db)) {
    throw std::invalid_argument("measure: snr_db must be finite unless noiseless");
  }
  MeasurementSet out;
  out.combining = combining;
  out.received = combining * (h + deviation);
  out.snr_db = noise.snr_db;
  out.noiseless = noise.noiseless;
  if (!noise.noiseless) {
    const double variance = std::pow(10.0, -noise.snr_db / 10.0);
    for (Eigen::Index k = 0; k < out.received.size(); ++k) {
      out.received[k] += rng.complex_normal(variance);
    }
  }
  return out;
}

CsiEstimate perturb_csi(const ChannelRealization& channel, double gain_error_intensity,
                        double aoa_error_intensity, RandomStream& rng) {
  if (gain_error_intensity < 0.0 || aoa_error_intensity < 0.0) {
    throw std::invalid_argument("perturb_csi: error intensities must be >= 0");
  }
  CsiEstimate out{channel.gains, channel.aoas};
  // Draw both errors for every path regardless of intensity so the stream
  // position, and hence the errors, do not depend on which intensity is zero.
  for (Eigen::Index l = 0; l < out.gains.size(); ++l) {
    const Complex gain_err = rng.complex_normal(1.0);
    const double aoa_err = rng.normal();
    out.gains[l] += gain_error_intensity * gain_err;
    out.aoas[l] += aoa_error_intensity * aoa_err * kPi;
  }
  return out;
}

}  // namespace blinddiag
