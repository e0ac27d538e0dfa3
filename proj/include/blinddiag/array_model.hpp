// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "blinddiag/rng.hpp"
#include "blinddiag/types.hpp"

namespace blinddiag {

// How the constant-modulus combining weights are scaled.
//   kRow:     entries (1/sqrt(N)) e^{j phi}, every combining vector has unit norm.
//   kElement: entries e^{j phi}, unit-modulus phase shifters.
enum class CombiningNormalization { kRow, kElement };

struct ScenarioConfig {
  int n_antennas = 64;
  double element_spacing = 0.5;  // wavelengths
  int n_paths = 4;
  double snr_db = 30.0;
  bool noiseless = false;
  int n_measurements = 64;
  int n_faults = 3;
  std::pair<double, double> fault_amp_range{0.2, 1.0};
  double gain_error_intensity = 0.0;
  double aoa_error_intensity = 0.0;
  // 0 keeps continuous combining phases; q > 0 rounds them to 2^q levels.
  int phase_bits = 0;
  CombiningNormalization combining_normalization = CombiningNormalization::kRow;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ChannelRealization {
  CVector gains;  // alpha_l
  RVector aoas;   // theta_l, radians
  CVector h;      // sum_l alpha_l a(theta_l)
};

struct FaultPattern {
  std::vector<int> support;  // ascending antenna indices
  CVector deviation;         // h_f, zero off the support
};

struct MeasurementSet {
  CMatrix combining;  // F, K x N
  CVector received;   // y, length K
  double snr_db = 0.0;
  bool noiseless = false;
  std::uint64_t seed = 0;

  int n_antennas() const { return static_cast<int>(combining.cols()); }
  int n_measurements() const { return static_cast<int>(combining.rows()); }
};

// Sub-path gain and AOA knowledge handed to the CSI-dependent baselines.
struct CsiEstimate {
  CVector gains;
  RVector aoas;
};

// a(theta): element n is exp(j 2 pi d n sin(theta)). Requires theta in
// [-pi/2, pi/2]; throws std::domain_error otherwise.
CVector steering_vector(double theta, int n_antennas, double spacing = 0.5);

// Same response for any real angle. Perturbed AOA estimates can leave
// [-pi/2, pi/2] and are used as-is.
CVector steering_response(double theta, int n_antennas, double spacing = 0.5);

// Columns a(theta_l) for each angle, via steering_response.
CMatrix steering_matrix(std::span<const double> aoas, int n_antennas, double spacing = 0.5);

ChannelRealization assemble_channel(const CVector& gains, const RVector& aoas, int n_antennas,
                                    double spacing = 0.5);

ChannelRealization sample_channel(const ScenarioConfig& cfg, RandomStream& rng);

FaultPattern sample_fault_pattern(const ScenarioConfig& cfg, RandomStream& rng);

CMatrix sample_combining_matrix(const ScenarioConfig& cfg, RandomStream& rng);

struct NoiseModel {
  double snr_db = 30.0;
  bool noiseless = false;
};

// y = F (h + h_f) + w, w ~ CN(0, 1/SNR) i.i.d. Throws std::invalid_argument on
// a dimension mismatch or non-finite SNR.
MeasurementSet measure(const CVector& h, const CVector& deviation, const CMatrix& combining,
                       const NoiseModel& noise, RandomStream& rng);

// alpha_hat = alpha + d_alpha * CN(0,1), theta_hat = theta + d_theta * N(0,1) * pi.
CsiEstimate perturb_csi(const ChannelRealization& channel, double gain_error_intensity,
                        double aoa_error_intensity, RandomStream& rng);

}  // namespace blinddiag
