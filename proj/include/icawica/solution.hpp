#pragma once

#include <span>
#include <vector>

#include "icawica/instance.hpp"

namespace icawica {

/// Selected items with cached profit and residual capacity per dimension.
///
/// `selected` keeps insertion order. Solutions returned by public
/// operations are feasible; `evaluate` may produce infeasible ones.
struct Solution {
  std::vector<Item> selected;
  double profit = 0.0;
  std::vector<double> residual;

  /// Empty selection: residual equals the capacities.
  static Solution empty(const Instance& instance);

  std::size_t size() const noexcept { return selected.size(); }

  bool fits(const Instance& instance, Item j) const {
    auto w = instance.item_weights(j);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] > residual[i]) return false;
    return true;
  }

  /// Appends j and updates the caches. No membership or capacity checks.
  void add(const Instance& instance, Item j) {
    auto w = instance.item_weights(j);
    for (std::size_t i = 0; i < w.size(); ++i) residual[i] -= w[i];
    profit += instance.profit(j);
    selected.push_back(j);
  }

  bool operator==(const Solution&) const = default;
};

/// Builds a Solution for the given indices from scratch. Does not require
/// feasibility. Throws std::invalid_argument on out-of-range or repeated
/// indices.
Solution evaluate(const Instance& instance, std::span<const Item> selected);

/// True iff every residual entry is >= 0.
bool is_feasible(const Solution& solution);

/// Per-item membership mask of size n.
std::vector<char> membership(const Instance& instance, const Solution& solution);

}  // namespace icawica
