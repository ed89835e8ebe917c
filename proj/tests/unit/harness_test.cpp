#include "icawica/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gtest/gtest.h"
#include "icawica/errors.hpp"
#include "icawica/random.hpp"

namespace icawica {
namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

IcaConfig quick_config() {
  IcaConfig c;
  c.population = 20;
  c.stagnation_epsilon = 3;
  return c;
}

// Independent average error: 100 * (1 - mean(p/o)) in long double.
double reference_error(const std::vector<double>& o, const std::vector<double>& p) {
  long double acc = 0;
  for (std::size_t i = 0; i < o.size(); ++i) acc += static_cast<long double>(p[i]) / o[i];
  return static_cast<double>(100.0L * (1.0L - acc / o.size()));
}

TEST(AverageError, Examples) {
  const std::vector<double> o{24381}, p{24137.19};
  EXPECT_NEAR(average_error(o, p), 1.0, 1e-12);
  const std::vector<double> o2{100, 200}, p2{99, 198};
  EXPECT_NEAR(average_error(o2, p2), 1.0, 1e-12);
  EXPECT_EQ(average_error(o2, o2), 0.0);
  const std::vector<double> beaten{101};
  const std::vector<double> hundred{100};
  EXPECT_LT(average_error(hundred, beaten), 0.0);
}

TEST(AverageError, Errors) {
  const std::vector<double> one{1}, two{1, 2}, zero{0};
  EXPECT_THROW(average_error({}, {}), std::invalid_argument);
  EXPECT_THROW(average_error(one, two), std::invalid_argument);
  EXPECT_THROW(average_error(zero, one), std::invalid_argument);
}

TEST(AverageError, AgreesWithIndependentEvaluation) {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(60);
    std::vector<double> o(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
      o[i] = 1.0 + static_cast<double>(rng.below(100000));
      p[i] = o[i] * (0.9 + 0.1 * rng.unit());
    }
    EXPECT_NEAR(average_error(o, p), reference_error(o, p), 1e-12);
  }
}

TEST(RunBatch, CartesianProductInDeterministicOrder) {
  const std::vector<Instance> instances{generate_instance(20, 2, 0.5, 2).with_id("b"),
                                        generate_instance(20, 2, 0.5, 1).with_id("a")};
  const std::vector<std::uint64_t> seeds{30, 10, 20};
  const auto entries = run_batch(instances, quick_config(), seeds, 3);
  ASSERT_EQ(entries.size(), 6u);
  const char* ids[] = {"a", "a", "a", "b", "b", "b"};
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ(entries[k].instance_id, ids[k]);
    EXPECT_EQ(entries[k].seed, seeds[k % 3]);
    EXPECT_EQ(entries[k].seed_position, k % 3);
    ASSERT_TRUE(entries[k].ok()) << entries[k].error;
  }
  const auto again = run_batch(instances, quick_config(), seeds, 1);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(again[k].result->best_profit, entries[k].result->best_profit);
}

TEST(RunBatch, FailuresAreQuarantined) {
  IcaConfig broken = quick_config();
  broken.population = 1;
  const std::vector<Instance> instances{generate_instance(10, 2, 0.5, 1)};
  const std::vector<std::uint64_t> seeds{1, 2};
  const auto entries = run_batch(instances, broken, seeds);
  ASSERT_EQ(entries.size(), 2u);
  for (const auto& e : entries) {
    EXPECT_FALSE(e.ok());
    EXPECT_FALSE(e.error.empty());
  }
  const auto summary = summarize(entries, instances);
  ASSERT_EQ(summary.instances.size(), 1u);
  EXPECT_EQ(summary.instances[0].failures, 2u);
  EXPECT_EQ(summary.instances[0].runs, 0u);
}

TEST(Summarize, ErrorsUseKnownOptima) {
  const Instance base = generate_instance(15, 2, 0.5, 3);
  std::vector<std::vector<double>> rows{base.weight_row(0), base.weight_row(1)};
  const std::vector<double> profits(base.profits().begin(), base.profits().end());
  const std::vector<double> caps(base.capacities().begin(), base.capacities().end());
  const std::vector<Instance> instances{
      Instance::create("with-opt", profits, rows, caps, 1e6),
      Instance::create("no-opt", profits, rows, caps)};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto entries = run_batch(instances, quick_config(), seeds);
  const auto s = summarize(entries, instances);
  ASSERT_EQ(s.instances.size(), 2u);
  EXPECT_EQ(s.instances[0].instance_id, "no-opt");
  EXPECT_FALSE(s.instances[0].avg_error_pct.has_value());
  const auto& row = s.instances[1];
  ASSERT_TRUE(row.avg_error_pct.has_value());
  EXPECT_LE(*row.best_error_pct, *row.avg_error_pct);
  EXPECT_NEAR(*row.avg_error_pct, (1e6 - row.mean_profit) / 1e6 * 100.0, 1e-9);
  EXPECT_EQ(row.runs, 3u);
  EXPECT_EQ(s.runs, 6u);
  EXPECT_EQ(*s.avg_error_pct, *row.avg_error_pct);
}

TEST(SweepIndependence, SinglePointMatchesPlainBatch) {
  const std::vector<Instance> instances{generate_instance(25, 3, 0.5, 5)};
  const std::vector<std::uint64_t> seeds{1, 2};
  const std::vector<double> rates{0.7};
  const auto rows = sweep_independence(instances, quick_config(), rates, seeds);
  const auto plain = summarize(run_batch(instances, quick_config(), seeds), instances);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].stats.instances[0].mean_profit, plain.instances[0].mean_profit);
  EXPECT_EQ(rows[0].stats.instances[0].best_profit, plain.instances[0].best_profit);
  const std::vector<double> bad{1.5};
  EXPECT_THROW(sweep_independence(instances, quick_config(), bad, seeds), std::invalid_argument);
}

TEST(SweepIndependence, CsvReproducibleApartFromTiming) {
  const std::vector<Instance> instances{generate_instance(30, 3, 0.5, 5).with_id("x"),
                                        generate_instance(30, 3, 0.25, 6).with_id("y")};
  const std::vector<std::uint64_t> seeds{4, 5};
  const std::vector<double> rates{0.0, 0.5, 1.0};
  auto strip_time = [](const std::string& csv) {
    std::string out;
    for (const auto& line : lines_of(csv)) {
      auto cells = split(line);
      cells.pop_back();  // mean_time_s
      for (const auto& c : cells) out += c + ",";
      out += "\n";
    }
    return out;
  };
  std::ostringstream a, b;
  write_sweep_csv(sweep_independence(instances, quick_config(), rates, seeds), a);
  write_sweep_csv(sweep_independence(instances, quick_config(), rates, seeds, 2), b);
  EXPECT_EQ(strip_time(a.str()), strip_time(b.str()));
  EXPECT_EQ(lines_of(a.str()).front(), "rate,instances,runs,best_error_pct,avg_error_pct,mean_time_s");
  EXPECT_EQ(lines_of(a.str()).size(), 4u);
}

TEST(WriteResults, EmptyListIsHeaderOnly) {
  std::ostringstream runs, summary;
  write_runs_csv({}, runs);
  write_summary_csv({}, summary);
  EXPECT_EQ(runs.str(), "instance,seed,best_profit,iterations,iteration_of_best,time_ms,termination\n");
  EXPECT_EQ(summary.str(),
            "instance,optimum,runs,best_profit,mean_profit,best_error_pct,avg_error_pct,mean_time_s\n");
}

TEST(WriteResults, OneRunIsTwoLinesAndRoundTrips) {
  RunResult r;
  r.instance_id = "5.100.0";
  r.seed = 42;
  r.best_profit = 24381;
  r.iterations_run = 57;
  r.iteration_of_best = 47;
  r.wall_time_seconds = 1.23456789;
  r.termination = Termination::stagnation;
  const std::vector<BatchEntry> entries{{r.instance_id, r.seed, 0, r, {}}};
  std::ostringstream out;
  write_runs_csv(entries, out);
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(out.str().back(), '\n');
  const auto cells = split(lines[1]);
  ASSERT_EQ(cells.size(), 7u);
  EXPECT_EQ(cells[0], "5.100.0");
  EXPECT_EQ(std::stoull(cells[1]), 42u);
  EXPECT_EQ(std::stod(cells[2]), 24381.0);
  EXPECT_EQ(std::stoul(cells[3]), 57u);
  EXPECT_EQ(std::stoul(cells[4]), 47u);
  EXPECT_EQ(std::stod(cells[5]), 1234.57);  // 6 significant digits
  EXPECT_EQ(cells[6], "stagnation");
}

TEST(WriteResults, SummaryRoundTrips) {
  const std::vector<Instance> instances{Instance::create("i", {3, 4}, {{1, 1}}, {1}, 4.0)};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  IcaConfig cfg = quick_config();
  cfg.population = 4;
  const auto summary = summarize(run_batch(instances, cfg, seeds), instances);
  std::ostringstream out;
  write_summary_csv(summary, out);
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 2u);
  const auto cells = split(lines[1]);
  ASSERT_EQ(cells.size(), 8u);
  EXPECT_EQ(cells[0], "i");
  EXPECT_EQ(std::stod(cells[1]), 4.0);
  EXPECT_EQ(std::stoul(cells[2]), 3u);
  const auto& row = summary.instances[0];
  auto six = [](double v) { return std::abs(v) * 5e-6 + 1e-300; };
  EXPECT_NEAR(std::stod(cells[3]), row.best_profit, six(row.best_profit));
  EXPECT_NEAR(std::stod(cells[4]), row.mean_profit, six(row.mean_profit));
  EXPECT_NEAR(std::stod(cells[5]), *row.best_error_pct, six(*row.best_error_pct));
  EXPECT_NEAR(std::stod(cells[6]), *row.avg_error_pct, six(*row.avg_error_pct));
  EXPECT_NEAR(std::stod(cells[7]), row.mean_time_seconds, six(row.mean_time_seconds));
}

TEST(FormatValue, SixSignificantDigits) {
  EXPECT_EQ(format_value(24381.0), "24381");
  EXPECT_EQ(format_value(0.0026), "0.0026");
  EXPECT_EQ(format_value(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_value(std::nullopt), "");
}

class ManifestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("icawica_manifest_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_ / "sub");
    std::ofstream(dir_ / "sub" / "multi.txt") << "2  2 1 0 2 1 3 1 3  1 1 7 5 1 1\n";
    std::ofstream(dir_ / "single.txt") << serialize_instance(generate_instance(5, 2, 0.5, 1));
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
};

TEST_F(ManifestTest, ParsesEntriesCommentsAndIndices) {
  std::ofstream(dir_ / "m.txt") << "# benchmark set\n\nsub/multi.txt:1   # second problem\n"
                                   "single.txt\n  sub/multi.txt \n";
  const auto entries = read_manifest((dir_ / "m.txt").string());
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].index, 1u);
  EXPECT_FALSE(entries[1].index.has_value());
  const auto instances = load_manifest((dir_ / "m.txt").string());
  ASSERT_EQ(instances.size(), 4u);
  EXPECT_EQ(instances[0].id(), "multi.1");
  EXPECT_EQ(instances[1].id(), "single");
  EXPECT_EQ(instances[3].id(), "multi.1");
}

TEST_F(ManifestTest, ReportsMissingFilesAndBadIndices) {
  std::ofstream(dir_ / "bad.txt") << "sub/multi.txt:5\n";
  EXPECT_THROW(load_manifest((dir_ / "bad.txt").string()), DataError);
  std::ofstream(dir_ / "missing.txt") << "nope.txt\n";
  EXPECT_THROW(load_manifest((dir_ / "missing.txt").string()), DataError);
  EXPECT_THROW(read_manifest((dir_ / "absent.txt").string()), DataError);
}

}  // namespace
}  // namespace icawica
