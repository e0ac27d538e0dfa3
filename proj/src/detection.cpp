// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blinddiag {

std::vector<int> FaultVerdict::flagged() const {
  std::vector<int> out;
  for (std::size_t n = 0; n < states.size(); ++n) {
    if (states[n]) out.push_back(static_cast<int>(n));
  }
  return out;
}

FaultVerdict classify_faults(const CVector& hf_hat, double threshold) {
  if (!(threshold >= 0.0)) throw std::invalid_argument("classify_faults: threshold must be >= 0");
  FaultVerdict v;
  v.threshold = threshold;
  v.magnitudes = hf_hat.cwiseAbs();
  v.states.resize(static_cast<std::size_t>(hf_hat.size()));
  for (Eigen::Index n = 0; n < hf_hat.size(); ++n) {
    v.states[static_cast<std::size_t>(n)] = v.magnitudes[n] > threshold;
  }
  return v;
}

TrialScore score_trial(const FaultVerdict& verdict, const FaultPattern& truth, const CVector& h_hat,
                       const CVector& h_true) {
  const auto n = verdict.states.size();
  if (static_cast<std::size_t>(truth.deviation.size()) != n ||
      static_cast<std::size_t>(h_hat.size()) != n || static_cast<std::size_t>(h_true.size()) != n) {
    throw std::invalid_argument("score_trial: inconsistent array sizes");
  }
  std::vector<bool> faulty(n, false);
  for (int idx : truth.support) faulty.at(static_cast<std::size_t>(idx)) = true;

  TrialScore s;
  for (std::size_t i = 0; i < n; ++i) {
    if (verdict.states[i] && !faulty[i]) ++s.false_alarms;
    if (!verdict.states[i] && faulty[i]) ++s.misses;
  }
  s.success = s.false_alarms == 0 && s.misses == 0;
  const double denom = h_true.squaredNorm();
  const double err = (h_hat - h_true).squaredNorm();
  s.channel_nmse = denom > 0.0 ? err / denom : (err == 0.0 ? 0.0 : INFINITY);
  return s;
}

ProportionInterval wilson_interval(int successes, int trials) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::invalid_argument("wilson_interval: need 0 <= successes <= trials, trials >= 1");
  }
  constexpr double z = 1.959963984540054;
  const double n = trials;
  const double p = successes / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  // Clamp so rounding never puts the point estimate outside its own interval.
  return {std::clamp(std::min(centre - half, p), 0.0, 1.0),
          std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

}  // namespace blinddiag
