#pragma once

#include <cstdint>

namespace harnack {

/// Every tolerance used anywhere in the library. Operations never hide their
/// own constants; they read them from here.
struct TolerancePolicy {
  double atol = 1e-10;       ///< absolute tolerance
  double psd_floor = -1e-8;  ///< most negative eigenvalue still called PSD
  double rank_rtol = 1e-8;   ///< relative singular-value cutoff for rank decisions
  double iter_tol = 1e-12;   ///< fixed-point residual target
  std::int64_t max_iter = 1'000'000;

  /// Throws invalid-input unless all tolerances are positive and psd_floor is negative.
  void validate() const;
};

} // namespace harnack
