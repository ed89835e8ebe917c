#include "icawica/instance.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "icawica/errors.hpp"
#include "icawica/random.hpp"

namespace icawica {
namespace {

constexpr const char* kTwoItems = "1 2 1 10 2 1 3 1 3";

TEST(ParseInstances, MinimalMultiStream) {
  auto all = parse_instances(kTwoItems, InstanceFormat::multi, "fx");
  ASSERT_EQ(all.size(), 1u);
  const Instance& inst = all[0];
  EXPECT_EQ(inst.id(), "fx.0");
  EXPECT_EQ(inst.items(), 2u);
  EXPECT_EQ(inst.dimensions(), 1u);
  ASSERT_TRUE(inst.known_optimum().has_value());
  EXPECT_EQ(*inst.known_optimum(), 10.0);
  EXPECT_EQ(inst.profit(0), 2.0);
  EXPECT_EQ(inst.profit(1), 1.0);
  EXPECT_EQ(inst.weight(0, 0), 3.0);
  EXPECT_EQ(inst.weight(0, 1), 1.0);
  EXPECT_EQ(inst.capacity(0), 3.0);
}

TEST(ParseInstances, SingleLayoutAndZeroOptimum) {
  auto all = parse_instances("2 1 0\n2 1\n3 1\n3\n", InstanceFormat::single, "gk");
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].id(), "gk");
  EXPECT_FALSE(all[0].known_optimum().has_value());
}

TEST(ParseInstances, MultipleProblemsGetIndexedIds) {
  std::string text = "2  2 1 0 2 1 3 1 3  1 1 7 5 1 1";
  auto all = parse_instances(text, InstanceFormat::multi, "mknapcb1");
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].id(), "mknapcb1.0");
  EXPECT_EQ(all[1].id(), "mknapcb1.1");
  EXPECT_EQ(*all[1].known_optimum(), 7.0);
}

TEST(ParseInstances, DetectsLayout) {
  EXPECT_EQ(parse_instances(kTwoItems, InstanceFormat::detect, "a")[0].id(), "a.0");
  EXPECT_EQ(parse_instances("2 1 10 2 1 3 1 3", InstanceFormat::detect, "a")[0].id(), "a");
}

void expect_error_at(const std::string& text, InstanceFormat format, std::size_t token) {
  try {
    parse_instances(text, format, "x");
    FAIL() << "expected ParseError for: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.token(), token) << e.what();
  }
}

TEST(ParseInstances, ReportsTokenPositions) {
  expect_error_at("1 2 1 10 2 1 3 1", InstanceFormat::multi, 8);      // truncated
  expect_error_at("1 2 1 10 2 x 3 1 3", InstanceFormat::multi, 5);    // non-numeric
  expect_error_at("1 0 1 10 2 1 3 1 3", InstanceFormat::multi, 1);    // n <= 0
  expect_error_at("1 2 -1 10 2 1 3 1 3", InstanceFormat::multi, 2);   // m <= 0
  expect_error_at("1 2 1 10 -2 1 3 1 3", InstanceFormat::multi, 4);   // negative profit
  expect_error_at("1 2 1 10 2 1 3 -1 3", InstanceFormat::multi, 7);   // negative weight
  expect_error_at("1 2 1 10 2 1 3 1 0", InstanceFormat::multi, 8);    // zero capacity
  expect_error_at("1 2.5 1 10 2 1 3 1 3", InstanceFormat::multi, 1);  // fractional count
  expect_error_at("1 2 1 10 2 1 3 1 3 9", InstanceFormat::multi, 9);  // trailing data
  expect_error_at("2 1 10 2 1 nan 1 3", InstanceFormat::single, 5);
}

TEST(ParseInstances, RoundTripsGeneratedInstances) {
  Rng rng(2024);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 1 + rng.below(40);
    const std::size_t m = 1 + rng.below(6);
    Instance a = generate_instance(n, m, 0.1 + 0.8 * rng.unit(), rng.next());
    // Mix in non-integer data and an optimum to exercise number formatting.
    std::vector<double> profits(a.profits().begin(), a.profits().end());
    profits[0] += 0.1 * k + 1.0 / 3.0;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(a.weight_row(i));
    rows[0][n - 1] = 1e-7 * (k + 1);
    std::vector<double> caps(a.capacities().begin(), a.capacities().end());
    Instance inst = Instance::create("rt", profits, rows, caps,
                                     k % 2 ? std::optional(12345.5 + k) : std::nullopt);

    auto back = parse_instances(serialize_instance(inst), InstanceFormat::single, "rt");
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0], inst) << "case " << k;
  }
}

TEST(ParseInstances, OrLibraryFileWhenAvailable) {
  const char* dir = std::getenv("ICAWICA_DATA_DIR");
  const auto path = std::filesystem::path(dir ? dir : ICAWICA_DEFAULT_DATA_DIR) / "mknapcb1.txt";
  if (!std::filesystem::exists(path)) GTEST_SKIP() << "missing " << path;
  auto all = load_instances(path.string());
  ASSERT_EQ(all.size(), 30u);
  EXPECT_EQ(all[0].items(), 100u);
  EXPECT_EQ(all[0].dimensions(), 5u);
}

TEST(Instance, CreateRejectsBadShapes) {
  EXPECT_THROW(Instance::create("x", {}, {}, {1.0}), DataError);
  EXPECT_THROW(Instance::create("x", {1.0}, {{1.0}, {1.0}}, {1.0}), DataError);
  EXPECT_THROW(Instance::create("x", {1.0, 2.0}, {{1.0}}, {1.0}), DataError);
  EXPECT_THROW(Instance::create("x", {1.0}, {{INFINITY}}, {1.0}), DataError);
  EXPECT_THROW(Instance::create("x", {1.0}, {{1.0}}, {0.0}), DataError);
}

TEST(GenerateInstance, CapacityIsCeilOfTightnessTimesRowSum) {
  const Instance inst = generate_instance(37, 4, 0.25, 99);
  for (std::size_t i = 0; i < inst.dimensions(); ++i) {
    double sum = 0.0;
    for (double w : inst.weight_row(i)) sum += w;
    EXPECT_EQ(inst.capacity(i), std::ceil(0.25 * sum));
  }
}

TEST(GenerateInstance, DeterministicAndInRange) {
  const Instance a = generate_instance(50, 3, 0.5, 7);
  const Instance b = generate_instance(50, 3, 0.5, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, generate_instance(50, 3, 0.5, 8));
  for (Item j = 0; j < a.items(); ++j) {
    EXPECT_GE(a.profit(j), 1.0);
    EXPECT_LE(a.profit(j), 1000.0);
    EXPECT_EQ(a.profit(j), std::floor(a.profit(j)));
    for (std::size_t i = 0; i < a.dimensions(); ++i) {
      EXPECT_GE(a.weight(i, j), 1.0);
      EXPECT_LE(a.weight(i, j), 1000.0);
    }
  }
  EXPECT_FALSE(a.known_optimum().has_value());
}

TEST(GenerateInstance, RejectsTightnessOutsideOpenUnitInterval) {
  EXPECT_THROW(generate_instance(5, 2, 0.0, 1), DataError);
  EXPECT_THROW(generate_instance(5, 2, 1.0, 1), DataError);
  EXPECT_THROW(generate_instance(0, 2, 0.5, 1), DataError);
}

}  // namespace
}  // namespace icawica
