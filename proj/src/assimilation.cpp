#include "icawica/assimilation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace icawica {

namespace {

void require_feasible(const Solution& s, const char* what) {
  if (!is_feasible(s)) throw std::invalid_argument(std::string(what) + " is infeasible");
}

// ceil(x) that ignores representation noise such as 0.3 * 10 = 3.0000000000000004.
std::size_t ceil_count(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }

void try_add(const Instance& instance, Solution& s, std::vector<char>& in, Item j) {
  if (in[j] || !s.fits(instance, j)) return;
  s.add(instance, j);
  in[j] = 1;
}

void fill(const Instance& instance, Solution& s, std::vector<char>& in, Rng& rng) {
  std::vector<Item> order(instance.items());
  std::iota(order.begin(), order.end(), Item{0});
  rng.shuffle(std::span<Item>(order));
  for (Item j : order) try_add(instance, s, in, j);
}

}  // namespace

void AssimilationParams::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
  if (local_iters == 0) throw std::invalid_argument("local_iters must be positive");
  if (!(independence_rate >= 0.0 && independence_rate <= 1.0))
    throw std::invalid_argument("independence_rate must lie in [0, 1]");
}

Solution repair(const Instance& instance, const Solution& partial, Rng& rng) {
  require_feasible(partial, "partial solution");
  Solution s = partial;
  auto in = membership(instance, s);
  fill(instance, s, in, rng);
  return s;
}

Solution merge_donors(const Instance& instance, const Solution& colony,
                      const Solution& imperialist, double beta, Rng& rng) {
  Solution child = Solution::empty(instance);
  std::vector<char> in(instance.items(), 0);

  std::vector<Item> donor = imperialist.selected;
  const std::size_t take = std::min(donor.size(), ceil_count(beta * static_cast<double>(donor.size())));
  rng.partial_shuffle(std::span<Item>(donor), take);
  for (std::size_t k = 0; k < take; ++k) try_add(instance, child, in, donor[k]);

  donor = colony.selected;
  rng.shuffle(std::span<Item>(donor));
  for (Item j : donor) try_add(instance, child, in, j);
  return child;
}

Solution constrained_assimilate(const Instance& instance, const Solution& colony,
                                const Solution& imperialist, const AssimilationParams& params,
                                Rng& rng) {
  require_feasible(colony, "colony");
  require_feasible(imperialist, "imperialist");
  Solution child = merge_donors(instance, colony, imperialist, params.beta, rng);
  auto in = membership(instance, child);
  fill(instance, child, in, rng);
  return child;
}

Solution independence_step(const Instance& instance, const Solution& colony,
                           const Solution& own_imperialist,
                           std::span<const Solution> all_imperialists,
                           const AssimilationParams& params, Rng& rng) {
  if (all_imperialists.empty()) throw std::invalid_argument("imperialist list is empty");
  Solution current = colony;
  for (std::size_t round = 0; round < params.local_iters; ++round) {
    if (rng.unit() < params.independence_rate) {
      for (const Solution& target : all_imperialists) {
        Solution candidate = constrained_assimilate(instance, current, target, params, rng);
        if (candidate.profit > current.profit) current = std::move(candidate);
      }
    } else {
      current = constrained_assimilate(instance, current, own_imperialist, params, rng);
    }
  }
  return current;
}

}  // namespace icawica
