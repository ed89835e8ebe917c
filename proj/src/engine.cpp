#include "icawica/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "icawica/assimilation.hpp"

namespace icawica {

namespace {

// Stream domains for Rng::derive.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kColonyStream = 1;

std::size_t roulette(std::span<const double> weights, Rng& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) return static_cast<std::size_t>(rng.below(weights.size()));
  const double u = rng.unit() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    acc += weights[k];
    last_positive = k;
    if (u < acc) return k;
  }
  return last_positive;
}

std::vector<double> totals(const std::vector<Empire>& empires, double xi) {
  std::vector<double> t(empires.size());
  for (std::size_t k = 0; k < empires.size(); ++k) t[k] = empire_total_cost(empires[k], xi);
  return t;
}

// Runs fn(k) for k in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < count; k += threads) fn(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

const Country& best_imperialist(const std::vector<Empire>& empires) {
  const Country* best = &empires.front().imperialist;
  for (const auto& e : empires)
    if (e.imperialist.cost() < best->cost()) best = &e.imperialist;
  return *best;
}

}  // namespace

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::stagnation: return "stagnation";
    case Termination::max_iterations: return "max_iterations";
    case Termination::max_seconds: return "max_seconds";
    case Termination::single_empire: return "single_empire";
  }
  return "unknown";
}

std::size_t IcaState::countries() const noexcept {
  std::size_t total = 0;
  for (const auto& e : empires) total += e.countries();
  return total;
}

Country random_country(const Instance& instance, Rng& rng) {
  return Country{repair(instance, Solution::empty(instance), rng)};
}

std::vector<Empire> initialize_empires(std::vector<Country> countries, const IcaConfig& config,
                                       Rng& rng) {
  const std::size_t population = countries.size();
  const std::size_t n_imp = config.imperialist_count(population);
  if (n_imp < 1 || n_imp >= population)
    throw std::invalid_argument("population of " + std::to_string(population) +
                                " cannot form imperialists and colonies");
  const std::size_t n_col = population - n_imp;

  std::stable_sort(countries.begin(), countries.end(),
                   [](const Country& a, const Country& b) { return a.cost() < b.cost(); });
  const double worst = countries.back().cost();

  std::vector<double> power(n_imp);
  double norm_sum = 0.0;
  for (std::size_t k = 0; k < n_imp; ++k) norm_sum += countries[k].cost() - worst;
  for (std::size_t k = 0; k < n_imp; ++k)
    power[k] = norm_sum == 0.0 ? 1.0 / static_cast<double>(n_imp)
                               : (countries[k].cost() - worst) / norm_sum;

  std::vector<std::size_t> share(n_imp);
  std::size_t dealt = 0;
  for (std::size_t k = 0; k < n_imp; ++k) {
    share[k] = static_cast<std::size_t>(std::floor(power[k] * static_cast<double>(n_col)));
    dealt += share[k];
  }
  std::vector<std::size_t> by_power(n_imp);
  std::iota(by_power.begin(), by_power.end(), std::size_t{0});
  std::stable_sort(by_power.begin(), by_power.end(),
                   [&](std::size_t a, std::size_t b) { return power[a] > power[b]; });
  for (std::size_t r = 0; dealt < n_col; ++r, ++dealt) ++share[by_power[r % n_imp]];

  std::vector<std::size_t> pool(n_col);
  std::iota(pool.begin(), pool.end(), n_imp);
  rng.shuffle(std::span<std::size_t>(pool));

  std::vector<Empire> empires(n_imp);
  std::size_t next = 0;
  for (std::size_t k = 0; k < n_imp; ++k) {
    empires[k].imperialist = std::move(countries[k]);
    empires[k].colonies.reserve(share[k]);
    for (std::size_t c = 0; c < share[k]; ++c)
      empires[k].colonies.push_back(std::move(countries[pool[next++]]));
  }
  return empires;
}

double empire_total_cost(const Empire& empire, double xi) {
  double mean = 0.0;
  if (!empire.colonies.empty()) {
    for (const auto& c : empire.colonies) mean += c.cost();
    mean /= static_cast<double>(empire.colonies.size());
  }
  return empire.imperialist.cost() + xi * mean;
}

std::vector<double> possession_probabilities(std::span<const double> total_costs) {
  std::vector<double> p(total_costs.size(), 0.0);
  if (total_costs.empty()) return p;
  const double worst = *std::max_element(total_costs.begin(), total_costs.end());
  double sum = 0.0;
  for (double t : total_costs) sum += t - worst;
  for (std::size_t k = 0; k < p.size(); ++k)
    p[k] = sum == 0.0 ? 1.0 / static_cast<double>(p.size()) : std::abs((total_costs[k] - worst) / sum);
  return p;
}

void exchange_step(std::vector<Empire>& empires) {
  for (auto& e : empires) {
    if (e.colonies.empty()) continue;
    auto best = std::min_element(e.colonies.begin(), e.colonies.end(),
                                 [](const Country& a, const Country& b) { return a.cost() < b.cost(); });
    if (best->cost() < e.imperialist.cost()) std::swap(*best, e.imperialist);
  }
}

void competition_step(std::vector<Empire>& empires, double xi, Rng& rng) {
  if (empires.size() < 2) throw std::invalid_argument("competition needs at least two empires");
  const auto t = totals(empires, xi);
  std::size_t loser = 0;
  for (std::size_t k = 1; k < t.size(); ++k)
    if (t[k] >= t[loser]) loser = k;
  auto& colonies = empires[loser].colonies;
  if (colonies.empty()) return;

  auto worst = std::max_element(colonies.begin(), colonies.end(),
                                [](const Country& a, const Country& b) { return a.cost() < b.cost(); });
  Country moved = std::move(*worst);
  colonies.erase(worst);

  auto prob = possession_probabilities(t);
  prob[loser] = 0.0;
  std::vector<std::size_t> candidates;
  std::vector<double> weights;
  for (std::size_t k = 0; k < empires.size(); ++k) {
    if (k == loser) continue;
    candidates.push_back(k);
    weights.push_back(prob[k]);
  }
  empires[candidates[roulette(weights, rng)]].colonies.push_back(std::move(moved));
}

void eliminate_step(std::vector<Empire>& empires, double xi, Rng& rng) {
  std::vector<std::size_t> survivors;
  std::vector<std::size_t> dissolved;
  for (std::size_t k = 0; k < empires.size(); ++k)
    (empires[k].colonies.empty() ? dissolved : survivors).push_back(k);
  if (dissolved.empty()) return;

  if (survivors.empty()) {
    std::size_t keep = 0;
    for (std::size_t k = 1; k < empires.size(); ++k)
      if (empires[k].imperialist.cost() < empires[keep].imperialist.cost()) keep = k;
    survivors.push_back(keep);
    dissolved.erase(std::find(dissolved.begin(), dissolved.end(), keep));
  }

  for (std::size_t d : dissolved) {
    std::vector<double> t(survivors.size());
    for (std::size_t s = 0; s < survivors.size(); ++s) t[s] = empire_total_cost(empires[survivors[s]], xi);
    const auto prob = possession_probabilities(t);
    empires[survivors[roulette(prob, rng)]].colonies.push_back(std::move(empires[d].imperialist));
  }

  std::vector<Empire> kept;
  kept.reserve(survivors.size());
  for (std::size_t s : survivors) kept.push_back(std::move(empires[s]));
  empires = std::move(kept);
}

IcaState initialize_state(const Instance& instance, const IcaConfig& config, Rng& rng) {
  config.validate(instance.items());
  const std::size_t population = config.population_for(instance.items());
  std::vector<Country> countries(population);
  parallel_for(population, config.threads, [&](std::size_t k) {
    Rng stream = Rng::derive(config.seed, {kInitStream, k});
    countries[k] = random_country(instance, stream);
  });

  IcaState state;
  state.empires = initialize_empires(std::move(countries), config, rng);
  state.best = best_imperialist(state.empires).solution;
  return state;
}

void iterate(IcaState& state, const Instance& instance, const IcaConfig& config, Rng& rng,
             const PhaseObserver& observer) {
  auto notify = [&](Phase p) {
    if (observer) observer(p, state);
  };
  const AssimilationParams params = config.assimilation();

  std::vector<Solution> imperialists;
  imperialists.reserve(state.empires.size());
  for (const auto& e : state.empires) imperialists.push_back(e.imperialist.solution);

  struct Slot {
    std::size_t empire;
    std::size_t colony;
  };
  std::vector<Slot> slots;
  for (std::size_t e = 0; e < state.empires.size(); ++e)
    for (std::size_t c = 0; c < state.empires[e].colonies.size(); ++c) slots.push_back({e, c});

  const std::uint64_t round = state.iteration;
  parallel_for(slots.size(), config.threads, [&](std::size_t k) {
    Rng stream = Rng::derive(config.seed, {kColonyStream, round, k});
    auto& colony = state.empires[slots[k].empire].colonies[slots[k].colony].solution;
    colony = independence_step(instance, colony, imperialists[slots[k].empire], imperialists,
                               params, stream);
  });
  notify(Phase::assimilation);

  exchange_step(state.empires);
  notify(Phase::exchange);

  if (state.empires.size() >= 2) competition_step(state.empires, config.xi, rng);
  notify(Phase::competition);

  eliminate_step(state.empires, config.xi, rng);
  notify(Phase::elimination);

  ++state.iteration;
  const Country& champion = best_imperialist(state.empires);
  if (champion.solution.profit > state.best.profit) {
    state.best = champion.solution;
    state.stagnation = 0;
    state.iteration_of_best = state.iteration;
  } else {
    ++state.stagnation;
  }
}

RunResult run(const Instance& instance, const IcaConfig& config, const PhaseObserver& observer) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  Rng rng(config.seed);
  IcaState state = initialize_state(instance, config, rng);
  double time_to_best = elapsed();
  const std::size_t epsilon = config.epsilon_for(instance.items());

  Termination reason = Termination::stagnation;
  for (;;) {
    if (state.stagnation >= epsilon) {
      reason = state.empires.size() == 1 ? Termination::single_empire : Termination::stagnation;
      break;
    }
    if (config.max_iterations && state.iteration >= *config.max_iterations) {
      reason = Termination::max_iterations;
      break;
    }
    if (config.max_seconds && elapsed() >= *config.max_seconds) {
      reason = Termination::max_seconds;
      break;
    }
    const std::size_t before = state.iteration_of_best;
    iterate(state, instance, config, rng, observer);
    if (state.iteration_of_best != before) time_to_best = elapsed();
  }

  RunResult result;
  result.instance_id = instance.id();
  result.seed = config.seed;
  result.best_profit = state.best.profit;
  result.best_solution = std::move(state.best);
  result.iterations_run = state.iteration;
  result.iteration_of_best = state.iteration_of_best;
  result.wall_time_seconds = elapsed();
  result.time_to_best_seconds = time_to_best;
  result.termination = reason;
  return result;
}

}  // namespace icawica
