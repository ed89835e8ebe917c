#include "icawica/solution.hpp"

#include <stdexcept>
#include <string>

namespace icawica {

Solution Solution::empty(const Instance& instance) {
  Solution s;
  s.residual.assign(instance.capacities().begin(), instance.capacities().end());
  return s;
}

Solution evaluate(const Instance& instance, std::span<const Item> selected) {
  std::vector<char> seen(instance.items(), 0);
  Solution s = Solution::empty(instance);
  s.selected.reserve(selected.size());
  for (Item j : selected) {
    if (j >= instance.items())
      throw std::invalid_argument("item index " + std::to_string(j) + " out of range");
    if (seen[j]) throw std::invalid_argument("item index " + std::to_string(j) + " repeated");
    seen[j] = 1;
    s.add(instance, j);
  }
  return s;
}

bool is_feasible(const Solution& solution) {
  for (double r : solution.residual)
    if (r < 0.0) return false;
  return true;
}

std::vector<char> membership(const Instance& instance, const Solution& solution) {
  std::vector<char> mask(instance.items(), 0);
  for (Item j : solution.selected) mask[j] = 1;
  return mask;
}

}  // namespace icawica
