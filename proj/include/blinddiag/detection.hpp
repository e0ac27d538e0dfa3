// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "blinddiag/array_model.hpp"
#include "blinddiag/types.hpp"

namespace blinddiag {

struct FaultVerdict {
  std::vector<bool> states;  // true = faulty
  double threshold = 0.0;
  RVector magnitudes;

  std::vector<int> flagged() const;
};

// Antenna n is faulty iff |hf_hat_n| > threshold (strict).
FaultVerdict classify_faults(const CVector& hf_hat, double threshold);

struct TrialScore {
  bool success = false;
  int false_alarms = 0;
  int misses = 0;
  double channel_nmse = 0.0;
};

TrialScore score_trial(const FaultVerdict& verdict, const FaultPattern& truth, const CVector& h_hat,
                       const CVector& h_true);

struct ProportionInterval {
  double low = 0.0;
  double high = 1.0;
};

// 95% Wilson score interval for `successes` out of `trials`.
ProportionInterval wilson_interval(int successes, int trials);

}  // namespace blinddiag
