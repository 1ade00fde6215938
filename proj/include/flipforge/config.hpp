#pragma once

#include <cmath>

#include "labelsort.hpp"

namespace flipforge {

// Frozen from measured maxima (see README); bounds are in rounds.
inline constexpr long long kSimC3 = 6;
inline constexpr long long kSimC4 = 10;
inline constexpr long long kSimC5 = 10;

inline long long sim_sort_bound(long long n) {
  long long L = std::max(1, ceil_log2(n));
  return kSimC3 * L * L + kSimC4 * L + kSimC5;
}

inline double sim_canonicalize_bound(long long n) { return 4 * std::log2(static_cast<double>(std::max(2LL, n))) + 4; }

// comb canonicalization: flips <= kCombConstant * v * log2 v
inline constexpr double kCombConstant = 40.0;

}  // namespace flipforge
