#pragma once

#include <string>
#include <vector>

#include "harnack/domination.hpp"

namespace harnack {

/// One row per swept value; the constant columns hold the grid constant over
/// all radii up to and including each radius, so every row is nondecreasing.
struct SweepSpec {
  std::string family;          ///< t-alpha-family, scalar or halperin-diag
  int n = 64;                  ///< dimension of T(alpha), or shift length for halperin-diag
  std::vector<double> values;  ///< alpha, scalar a, or diagonal entry a
  Complex reference{0.0, 0.0}; ///< t-alpha-family: the alpha of T'
  GridSpec grid;
};

const std::vector<std::string>& sweep_families();

/// CSV text with a header row. Unknown families are invalid-input.
std::string run_sweep_csv(const SweepSpec& spec, const TolerancePolicy& tol = {});

} // namespace harnack
