// Command-line front end: solve, bench, sweep, oracle, gen.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icawica/config.hpp"
#include "icawica/engine.hpp"
#include "icawica/errors.hpp"
#include "icawica/harness.hpp"
#include "icawica/instance.hpp"
#include "icawica/oracle.hpp"

namespace {

using namespace icawica;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kRuntime = 3 };

std::string number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string selection(std::vector<Item> items) {
  std::sort(items.begin(), items.end());
  std::string s = "{";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(items[k]);
  }
  return s + "}";
}

Instance pick(const std::string& path, std::size_t index) {
  auto all = load_instances(path);
  if (index >= all.size())
    throw DataError(path + ": index " + std::to_string(index) + " out of range (" +
                    std::to_string(all.size()) + " problems)");
  return all[index];
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

IcaConfig effective_config(const std::string& config_path, std::optional<std::uint64_t> seed,
                           std::optional<std::size_t> threads) {
  IcaConfig config;
  if (!config_path.empty()) config = load_config(config_path, config);
  if (seed) config.seed = *seed;
  if (threads) config.threads = *threads;
  std::cerr << "config: " << config_to_json(config) << '\n';
  return config;
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t runs) {
  std::vector<std::uint64_t> seeds(runs);
  for (std::size_t r = 0; r < runs; ++r) seeds[r] = base + r;
  return seeds;
}

std::vector<double> parse_rates(const std::string& text) {
  std::vector<double> rates;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    double v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size())
      throw CLI::ValidationError("--rates", "not a number: '" + tok + "'");
    rates.push_back(v);
  }
  if (rates.empty()) throw CLI::ValidationError("--rates", "empty rate list");
  return rates;
}

int report_batch(const std::vector<BatchEntry>& entries) {
  int failed = 0;
  for (const auto& e : entries) {
    if (e.ok()) {
      std::cerr << e.instance_id << " seed " << e.seed << ": " << number(e.result->best_profit)
                << " in " << e.result->iterations_run << " iterations\n";
    } else {
      std::cerr << e.instance_id << " seed " << e.seed << ": FAILED: " << e.error << '\n';
      ++failed;
    }
  }
  return failed == 0 ? kOk : kRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Imperialist competitive algorithm with independence and constrained assimilation "
               "for the 0-1 multidimensional knapsack problem"};
  app.require_subcommand(1);

  std::string instance_path, config_path, out_path, summary_path, manifest_path, rates_text;
  std::size_t index = 0, runs = 0, jobs = 1, items = 0, dims = 0;
  std::uint64_t seed_base = 0, gen_seed = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  double tightness = 0.0;

  auto* solve = app.add_subcommand("solve", "Run the solver once on one instance");
  solve->add_option("--instance", instance_path, "Instance file")->required();
  solve->add_option("--index", index, "Zero-based problem index within the file");
  solve->add_option("--config", config_path, "JSON config overriding the defaults");
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--threads", threads, "Threads for the colony update phase");
  solve->add_option("--out", out_path, "Per-run CSV output");

  auto* bench = app.add_subcommand("bench", "Multi-seed runs over a manifest of instances");
  bench->add_option("--manifest", manifest_path, "Instance manifest")->required();
  bench->add_option("--config", config_path, "JSON config overriding the defaults");
  bench->add_option("--runs", runs, "Runs per instance")->required()->check(CLI::PositiveNumber);
  bench->add_option("--seed-base", seed_base, "Seed of the first run");
  bench->add_option("--out", out_path, "Per-run CSV output")->required();
  bench->add_option("--summary", summary_path, "Per-instance summary CSV output");
  bench->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  bench->add_option("--threads", threads, "Threads per run");

  auto* sweep = app.add_subcommand("sweep", "Independence-rate sensitivity sweep");
  sweep->add_option("--manifest", manifest_path, "Instance manifest")->required();
  sweep->add_option("--config", config_path, "JSON config overriding the defaults");
  sweep->add_option("--rates", rates_text, "Comma-separated independence rates")->required();
  sweep->add_option("--runs", runs, "Runs per instance and rate")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--seed-base", seed_base, "Seed of the first run");
  sweep->add_option("--out", out_path, "Sweep CSV output")->required();
  sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep->add_option("--threads", threads, "Threads per run");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for instances with at most 24 items");
  oracle->add_option("--instance", instance_path, "Instance file")->required();
  oracle->add_option("--index", index, "Zero-based problem index within the file");

  auto* gen = app.add_subcommand("gen", "Generate a random instance in single-problem layout");
  gen->add_option("--items", items, "Item count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--dims", dims, "Dimension count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--tightness", tightness, "Capacity / total weight ratio in (0,1)")->required();
  gen->add_option("--seed", gen_seed, "Random seed")->required();
  gen->add_option("--out", out_path, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) {
      const Instance inst = pick(instance_path, index);
      const IcaConfig config = effective_config(config_path, seed, threads);
      const RunResult r = run(inst, config);
      std::cout << number(r.best_profit) << '\n' << selection(r.best_solution.selected) << '\n';
      std::cerr << inst.id() << ": " << r.iterations_run << " iterations, best at "
                << r.iteration_of_best << ", " << r.wall_time_seconds << " s ("
                << to_string(r.termination) << ")\n";
      if (!out_path.empty()) {
        std::vector<BatchEntry> one{{inst.id(), config.seed, 0, r, {}}};
        auto out = open_out(out_path);
        write_runs_csv(one, out);
      }
    } else if (*bench) {
      const auto instances = load_manifest(manifest_path);
      const IcaConfig config = effective_config(config_path, std::nullopt, threads);
      const auto seeds = seed_range(seed_base, runs);
      const auto entries = run_batch(instances, config, seeds, jobs);
      {
        auto out = open_out(out_path);
        write_runs_csv(entries, out);
      }
      const auto summary = summarize(entries, instances);
      if (!summary_path.empty()) {
        auto out = open_out(summary_path);
        write_summary_csv(summary, out);
      }
      for (const auto& row : summary.instances)
        std::cout << row.instance_id << " best " << format_value(row.best_profit) << " mean "
                  << format_value(row.mean_profit) << " avg_error_pct "
                  << (row.avg_error_pct ? format_value(row.avg_error_pct) : "n/a") << '\n';
      return report_batch(entries);
    } else if (*sweep) {
      const auto rates = parse_rates(rates_text);
      const auto instances = load_manifest(manifest_path);
      const IcaConfig config = effective_config(config_path, std::nullopt, threads);
      const auto rows = sweep_independence(instances, config, rates, seed_range(seed_base, runs), jobs);
      auto out = open_out(out_path);
      write_sweep_csv(rows, out);
      for (const auto& row : rows)
        std::cout << "rate " << format_value(row.independence_rate) << " avg_error_pct "
                  << (row.stats.avg_error_pct ? format_value(row.stats.avg_error_pct) : "n/a")
                  << " mean_time_s " << format_value(row.stats.mean_time_seconds) << '\n';
    } else if (*oracle) {
      const auto best = enumerate_optimum(pick(instance_path, index));
      std::cout << number(best.profit) << '\n' << selection(best.selected) << '\n';
    } else if (*gen) {
      const Instance inst = generate_instance(items, dims, tightness, gen_seed);
      auto out = open_out(out_path);
      serialize_instance(inst, out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
