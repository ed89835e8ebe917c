#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icawica/config.hpp"
#include "icawica/instance.hpp"
#include "icawica/random.hpp"
#include "icawica/solution.hpp"

namespace icawica {

/// One member of the population. Cost is the negated profit, so lower is
/// stronger.
struct Country {
  Solution solution;

  double cost() const noexcept { return -solution.profit; }
};

struct Empire {
  Country imperialist;
  std::vector<Country> colonies;

  std::size_t countries() const noexcept { return 1 + colonies.size(); }
};

enum class Termination { stagnation, max_iterations, max_seconds, single_empire };

std::string_view to_string(Termination t);

struct RunResult {
  std::string instance_id;
  std::uint64_t seed = 0;
  double best_profit = 0.0;
  Solution best_solution;
  std::size_t iterations_run = 0;
  std::size_t iteration_of_best = 0;
  double wall_time_seconds = 0.0;
  double time_to_best_seconds = 0.0;
  Termination termination = Termination::stagnation;
};

/// Mutable search state of one run.
struct IcaState {
  std::vector<Empire> empires;
  Solution best;
  std::size_t iteration = 0;          ///< Completed iterations.
  std::size_t stagnation = 0;         ///< Consecutive iterations without improvement.
  std::size_t iteration_of_best = 0;

  std::size_t countries() const noexcept;
};

enum class Phase { assimilation, exchange, competition, elimination };

/// Called after each phase of an iteration, mainly for auditing.
using PhaseObserver = std::function<void(Phase, const IcaState&)>;

/// Repair of the empty solution: a random maximal feasible country.
Country random_country(const Instance& instance, Rng& rng);

/// Sorts countries by cost, promotes the best ceil(fraction * population) to
/// imperialists and deals the rest out in proportion to normalized power.
/// Costs are normalized against the worst country in the population.
/// Throws std::invalid_argument when the population cannot form an empire
/// and at least one colony.
std::vector<Empire> initialize_empires(std::vector<Country> countries, const IcaConfig& config,
                                       Rng& rng);

/// Imperialist cost plus xi times the mean colony cost (0 without colonies).
double empire_total_cost(const Empire& empire, double xi);

/// |N_k / sum N| with N_k = T_k - max T; uniform when all totals are equal.
std::vector<double> possession_probabilities(std::span<const double> total_costs);

/// Swaps each imperialist with its best colony when that colony is strictly
/// cheaper. Ties go to the lowest colony index.
void exchange_step(std::vector<Empire>& empires);

/// Moves the worst colony of the weakest empire (highest total cost, ties to
/// the higher index) to a roulette-chosen other empire. A colony-less weakest
/// empire is left for elimination. Throws std::invalid_argument with fewer
/// than two empires.
void competition_step(std::vector<Empire>& empires, double xi, Rng& rng);

/// Dissolves colony-less empires; each imperialist is demoted to a colony of
/// a roulette-chosen surviving empire. If every empire is colony-less, the
/// one with the cheapest imperialist survives.
void eliminate_step(std::vector<Empire>& empires, double xi, Rng& rng);

/// Builds the initial population and empires. The initialization counts as
/// an improvement of the global best.
IcaState initialize_state(const Instance& instance, const IcaConfig& config, Rng& rng);

/// One iteration: colony local search, exchange, competition, elimination,
/// global-best bookkeeping. Colony k in iteration t draws from a stream
/// derived from (seed, t, k), so the result is independent of threading.
void iterate(IcaState& state, const Instance& instance, const IcaConfig& config, Rng& rng,
             const PhaseObserver& observer = {});

/// Full run until stagnation or a hard cap.
RunResult run(const Instance& instance, const IcaConfig& config,
              const PhaseObserver& observer = {});

}  // namespace icawica
