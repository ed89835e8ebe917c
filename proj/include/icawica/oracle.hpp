#pragma once

#include <cstddef>
#include <vector>

#include "icawica/instance.hpp"

namespace icawica {

inline constexpr std::size_t kMaxEnumerationItems = 24;

struct OptimumResult {
  double profit = 0.0;
  std::vector<Item> selected;  // ascending
};

/// Exhaustive search over all 2^n subsets. Among equal-profit optima the
/// lexicographically smallest ascending index list wins.
/// Throws DataError when n exceeds kMaxEnumerationItems.
OptimumResult enumerate_optimum(const Instance& instance);

}  // namespace icawica
