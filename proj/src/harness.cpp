#include "icawica/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "icawica/errors.hpp"

namespace icawica {

double average_error(std::span<const double> optima, std::span<const double> achieved) {
  if (optima.empty()) throw std::invalid_argument("average_error needs at least one value");
  if (optima.size() != achieved.size()) throw std::invalid_argument("average_error length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < optima.size(); ++i) {
    if (!(optima[i] > 0.0)) throw std::invalid_argument("optimum must be positive");
    sum += (optima[i] - achieved[i]) / optima[i];
  }
  return sum / static_cast<double>(optima.size()) * 100.0;
}

std::vector<BatchEntry> run_batch(std::span<const Instance> instances, const IcaConfig& config,
                                  std::span<const std::uint64_t> seeds, std::size_t jobs) {
  std::vector<BatchEntry> entries;
  entries.reserve(instances.size() * seeds.size());
  for (const auto& inst : instances)
    for (std::size_t s = 0; s < seeds.size(); ++s)
      entries.push_back({inst.id(), seeds[s], s, std::nullopt, {}});

  auto work = [&](std::size_t k) {
    const Instance& inst = instances[k / seeds.size()];
    IcaConfig cfg = config;
    cfg.seed = entries[k].seed;
    try {
      entries[k].result = run(inst, cfg);
    } catch (const std::exception& e) {
      entries[k].error = e.what();
    }
  };

  jobs = std::max<std::size_t>(1, std::min(jobs, entries.size()));
  if (jobs == 1) {
    for (std::size_t k = 0; k < entries.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < entries.size();) work(k);
      });
  }

  std::stable_sort(entries.begin(), entries.end(), [](const BatchEntry& a, const BatchEntry& b) {
    if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
    return a.seed_position < b.seed_position;
  });
  return entries;
}

SummaryStats summarize(std::span<const BatchEntry> entries, std::span<const Instance> instances) {
  std::map<std::string, std::optional<double>> optima;
  for (const auto& inst : instances) optima.emplace(inst.id(), inst.known_optimum());

  std::map<std::string, InstanceSummary> rows;
  std::map<std::string, double> time_sum;
  for (const auto& e : entries) {
    auto& row = rows[e.instance_id];
    row.instance_id = e.instance_id;
    if (!e.ok()) {
      ++row.failures;
      continue;
    }
    const RunResult& r = *e.result;
    row.best_profit = row.runs == 0 ? r.best_profit : std::max(row.best_profit, r.best_profit);
    row.mean_profit += r.best_profit;
    time_sum[e.instance_id] += r.time_to_best_seconds;
    ++row.runs;
  }

  SummaryStats stats;
  std::vector<double> opt, best, mean;
  std::size_t with_runs = 0;
  for (auto& [id, row] : rows) {
    if (row.runs > 0) {
      row.mean_profit /= static_cast<double>(row.runs);
      row.mean_time_seconds = time_sum[id] / static_cast<double>(row.runs);
      if (auto it = optima.find(id); it != optima.end()) row.optimum = it->second;
      if (row.optimum && *row.optimum > 0.0) {
        const double o = *row.optimum;
        row.best_error_pct = average_error(std::span(&o, 1), std::span(&row.best_profit, 1));
        row.avg_error_pct = average_error(std::span(&o, 1), std::span(&row.mean_profit, 1));
        opt.push_back(o);
        best.push_back(row.best_profit);
        mean.push_back(row.mean_profit);
      }
      stats.best_profit += row.best_profit;
      stats.mean_profit += row.mean_profit;
      stats.mean_time_seconds += row.mean_time_seconds;
      stats.runs += row.runs;
      ++with_runs;
    }
    stats.instances.push_back(row);
  }
  if (with_runs > 0) {
    stats.best_profit /= static_cast<double>(with_runs);
    stats.mean_profit /= static_cast<double>(with_runs);
    stats.mean_time_seconds /= static_cast<double>(with_runs);
  }
  if (!opt.empty()) {
    stats.best_error_pct = average_error(opt, best);
    stats.avg_error_pct = average_error(opt, mean);
  }
  return stats;
}

std::vector<SweepRow> sweep_independence(std::span<const Instance> instances,
                                         const IcaConfig& config, std::span<const double> rates,
                                         std::span<const std::uint64_t> seeds, std::size_t jobs) {
  for (double r : rates)
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("independence rates must lie in [0, 1]");
  std::vector<SweepRow> rows;
  for (double r : rates) {
    IcaConfig cfg = config;
    cfg.independence_rate = r;
    auto entries = run_batch(instances, cfg, seeds, jobs);
    rows.push_back({r, summarize(entries, instances)});
  }
  return rows;
}

std::string format_value(std::optional<double> v) {
  if (!v) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", *v);
  return buf;
}

void write_runs_csv(std::span<const BatchEntry> entries, std::ostream& out) {
  out << "instance,seed,best_profit,iterations,iteration_of_best,time_ms,termination\n";
  for (const auto& e : entries) {
    out << e.instance_id << ',' << e.seed << ',';
    if (e.ok()) {
      const RunResult& r = *e.result;
      out << format_value(r.best_profit) << ',' << r.iterations_run << ',' << r.iteration_of_best
          << ',' << format_value(r.wall_time_seconds * 1000.0) << ',' << to_string(r.termination);
    } else {
      out << ",,,,failed";
    }
    out << '\n';
  }
}

void write_summary_csv(const SummaryStats& summary, std::ostream& out) {
  out << "instance,optimum,runs,best_profit,mean_profit,best_error_pct,avg_error_pct,mean_time_s\n";
  for (const auto& row : summary.instances) {
    out << row.instance_id << ',' << format_value(row.optimum) << ',' << row.runs << ','
        << format_value(row.best_profit) << ',' << format_value(row.mean_profit) << ','
        << format_value(row.best_error_pct) << ',' << format_value(row.avg_error_pct) << ','
        << format_value(row.mean_time_seconds) << '\n';
  }
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "rate,instances,runs,best_error_pct,avg_error_pct,mean_time_s\n";
  for (const auto& row : rows) {
    out << format_value(row.independence_rate) << ',' << row.stats.instances.size() << ','
        << row.stats.runs << ',' << format_value(row.stats.best_error_pct) << ','
        << format_value(row.stats.avg_error_pct) << ',' << format_value(row.stats.mean_time_seconds)
        << '\n';
  }
}

std::vector<ManifestEntry> read_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw DataError("cannot open manifest: " + manifest_path);
  const auto base = std::filesystem::path(manifest_path).parent_path();

  std::vector<ManifestEntry> entries;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);

    ManifestEntry entry;
    if (auto colon = line.rfind(':'); colon != std::string::npos) {
      const std::string suffix = line.substr(colon + 1);
      if (!suffix.empty() && std::all_of(suffix.begin(), suffix.end(), ::isdigit)) {
        entry.index = std::stoul(suffix);
        line.erase(colon);
      }
    }
    if (line.empty()) throw DataError(manifest_path + ":" + std::to_string(lineno) + ": empty path");
    std::filesystem::path p(line);
    entry.path = (p.is_relative() ? base / p : p).lexically_normal().string();
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<Instance> load_manifest(const std::string& manifest_path) {
  std::vector<Instance> out;
  for (const auto& entry : read_manifest(manifest_path)) {
    auto file = load_instances(entry.path);
    if (entry.index) {
      if (*entry.index >= file.size())
        throw DataError(entry.path + ": index " + std::to_string(*entry.index) + " out of range (" +
                        std::to_string(file.size()) + " problems)");
      out.push_back(std::move(file[*entry.index]));
    } else {
      for (auto& inst : file) out.push_back(std::move(inst));
    }
  }
  return out;
}

}  // namespace icawica
