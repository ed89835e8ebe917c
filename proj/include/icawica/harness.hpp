#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icawica/config.hpp"
#include "icawica/engine.hpp"
#include "icawica/instance.hpp"

namespace icawica {

/// Mean relative gap (o_i - p_i) / o_i in percent. Negative values mean a
/// recorded optimum was beaten and are returned as-is.
/// Throws std::invalid_argument on empty or mismatched input, or o_i <= 0.
double average_error(std::span<const double> optima, std::span<const double> achieved);

/// Outcome of one (instance, seed) run. Exactly one of result/error is set.
struct BatchEntry {
  std::string instance_id;
  std::uint64_t seed = 0;
  std::size_t seed_position = 0;
  std::optional<RunResult> result;
  std::string error;

  bool ok() const noexcept { return result.has_value(); }
};

/// Runs every instance with every seed on up to `jobs` threads. A failing
/// run is recorded in its entry and does not stop the batch. Entries are
/// ordered by (instance id, seed position) regardless of scheduling.
std::vector<BatchEntry> run_batch(std::span<const Instance> instances, const IcaConfig& config,
                                  std::span<const std::uint64_t> seeds, std::size_t jobs = 1);

struct InstanceSummary {
  std::string instance_id;
  std::optional<double> optimum;
  std::size_t runs = 0;      ///< successful runs
  std::size_t failures = 0;
  double best_profit = 0.0;
  double mean_profit = 0.0;
  std::optional<double> best_error_pct;  ///< set when the optimum is known
  std::optional<double> avg_error_pct;
  double mean_time_seconds = 0.0;  ///< mean time to reach the run's best
};

/// Per-instance rows plus set-level means. Error means cover only
/// instances with a known optimum.
struct SummaryStats {
  std::vector<InstanceSummary> instances;
  double best_profit = 0.0;
  double mean_profit = 0.0;
  std::optional<double> best_error_pct;
  std::optional<double> avg_error_pct;
  double mean_time_seconds = 0.0;
  std::size_t runs = 0;
};

/// Optima come from the instances' known_optimum, matched by id.
SummaryStats summarize(std::span<const BatchEntry> entries, std::span<const Instance> instances);

struct SweepRow {
  double independence_rate = 0.0;
  SummaryStats stats;
};

/// One batch per rate with independence_rate overridden.
std::vector<SweepRow> sweep_independence(std::span<const Instance> instances,
                                         const IcaConfig& config, std::span<const double> rates,
                                         std::span<const std::uint64_t> seeds,
                                         std::size_t jobs = 1);

/// instance,seed,best_profit,iterations,iteration_of_best,time_ms,termination
void write_runs_csv(std::span<const BatchEntry> entries, std::ostream& out);
/// instance,optimum,runs,best_profit,mean_profit,best_error_pct,avg_error_pct,mean_time_s
void write_summary_csv(const SummaryStats& summary, std::ostream& out);
/// rate,instances,runs,best_error_pct,avg_error_pct,mean_time_s
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);

/// %.6g formatting used by every CSV writer; empty for a missing value.
std::string format_value(std::optional<double> v);

struct ManifestEntry {
  std::string path;
  std::optional<std::size_t> index;
};

/// `path[:index]` per line, `#` starts a comment. Relative paths are
/// resolved against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::string& manifest_path);
std::vector<Instance> load_manifest(const std::string& manifest_path);

}  // namespace icawica
