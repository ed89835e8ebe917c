#include "icawica/oracle.hpp"

#include <string>

#include "icawica/errors.hpp"

namespace icawica {

namespace {

// Pre-order walk of the "append a larger index" tree visits ascending index
// lists in lexicographic order, so keeping only strict improvements yields
// the lexicographically smallest optimum. Supersets of an infeasible set are
// infeasible (weights are non-negative), which prunes whole subtrees.
class Enumerator {
 public:
  explicit Enumerator(const Instance& instance)
      : inst_(instance),
        n_(instance.items()),
        m_(instance.dimensions()),
        residual_((n_ + 1) * m_) {
    for (std::size_t i = 0; i < m_; ++i) residual_[i] = instance.capacity(i);
  }

  OptimumResult solve() {
    visit(0, 0.0);
    return best_;
  }

 private:
  void visit(Item start, double profit) {
    if (profit > best_.profit || !found_) {
      found_ = true;
      best_.profit = profit;
      best_.selected = path_;
    }
    const std::size_t depth = path_.size();
    const double* cur = residual_.data() + depth * m_;
    double* next = residual_.data() + (depth + 1) * m_;
    for (Item k = start; k < n_; ++k) {
      auto w = inst_.item_weights(k);
      bool fits = true;
      for (std::size_t i = 0; i < m_; ++i) {
        next[i] = cur[i] - w[i];
        if (next[i] < 0.0) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      path_.push_back(k);
      visit(k + 1, profit + inst_.profit(k));
      path_.pop_back();
    }
  }

  const Instance& inst_;
  std::size_t n_;
  std::size_t m_;
  std::vector<double> residual_;
  std::vector<Item> path_;
  OptimumResult best_;
  bool found_ = false;
};

}  // namespace

OptimumResult enumerate_optimum(const Instance& instance) {
  if (instance.items() > kMaxEnumerationItems)
    throw DataError("exhaustive oracle limited to " + std::to_string(kMaxEnumerationItems) +
                    " items, instance has " + std::to_string(instance.items()));
  return Enumerator(instance).solve();
}

}  // namespace icawica
