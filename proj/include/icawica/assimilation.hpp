#pragma once

#include <cstddef>
#include <span>

#include "icawica/instance.hpp"
#include "icawica/random.hpp"
#include "icawica/solution.hpp"

namespace icawica {

struct AssimilationParams {
  double beta = 0.5;               ///< Fraction of the imperialist's items offered first.
  std::size_t local_iters = 3;     ///< Assimilation rounds per colony per iteration.
  double independence_rate = 0.7;  ///< Probability of a round trying every imperialist.

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Scans all items in a fresh random order and adds every one that fits.
/// The result contains `partial` and is maximal: no unselected item fits.
/// Throws std::invalid_argument if `partial` is infeasible.
Solution repair(const Instance& instance, const Solution& partial, Rng& rng);

/// The incomplete child before repair: ceil(beta * |imperialist|) items
/// sampled from the imperialist, then the colony's items in random order.
/// Items that are already present or do not fit are skipped.
Solution merge_donors(const Instance& instance, const Solution& colony,
                      const Solution& imperialist, double beta, Rng& rng);

/// merge_donors followed by repair. Donors must be feasible.
Solution constrained_assimilate(const Instance& instance, const Solution& colony,
                                const Solution& imperialist, const AssimilationParams& params,
                                Rng& rng);

/// Local search for one colony over `params.local_iters` rounds. With
/// probability independence_rate a round assimilates toward every
/// imperialist in turn, keeping a candidate only if it is strictly more
/// profitable; otherwise the colony moves toward its own imperialist
/// unconditionally.
Solution independence_step(const Instance& instance, const Solution& colony,
                           const Solution& own_imperialist,
                           std::span<const Solution> all_imperialists,
                           const AssimilationParams& params, Rng& rng);

}  // namespace icawica
