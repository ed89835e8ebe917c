#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace icawica {

using Item = std::size_t;

/// Immutable 0-1 multidimensional knapsack problem.
///
/// Weights are stored item-major so that checking whether one item fits
/// touches a contiguous run of m values.
class Instance {
 public:
  /// Validates and builds an instance. `weights` holds m rows of n entries
  /// (row i = dimension i). Throws DataError on any violated invariant.
  static Instance create(std::string id, std::vector<double> profits,
                         const std::vector<std::vector<double>>& weights,
                         std::vector<double> capacities,
                         std::optional<double> known_optimum = std::nullopt);

  const std::string& id() const noexcept { return id_; }
  std::size_t items() const noexcept { return profits_.size(); }
  std::size_t dimensions() const noexcept { return capacities_.size(); }

  double profit(Item j) const { return profits_[j]; }
  double weight(std::size_t dim, Item j) const { return item_weights_[j * dimensions() + dim]; }
  double capacity(std::size_t dim) const { return capacities_[dim]; }

  std::span<const double> profits() const noexcept { return profits_; }
  std::span<const double> capacities() const noexcept { return capacities_; }
  /// The m weights of item j, one per dimension.
  std::span<const double> item_weights(Item j) const {
    return {item_weights_.data() + j * dimensions(), dimensions()};
  }
  std::vector<double> weight_row(std::size_t dim) const;

  const std::optional<double>& known_optimum() const noexcept { return known_optimum_; }

  Instance with_id(std::string id) const;

  bool operator==(const Instance&) const = default;

 private:
  Instance() = default;

  std::string id_;
  std::vector<double> profits_;
  std::vector<double> item_weights_;
  std::vector<double> capacities_;
  std::optional<double> known_optimum_;
};

enum class InstanceFormat {
  multi,   ///< Leading problem count K, then K problems (OR-library layout).
  single,  ///< Exactly one problem, no leading count.
  detect,  ///< single if the token count matches one problem exactly, else multi.
};

/// Parses whitespace-delimited instance text. Problem k gets the id
/// "<base_name>.<k>" in multi layout and "<base_name>" in single layout.
/// Throws ParseError carrying the zero-based token position.
std::vector<Instance> parse_instances(std::istream& in, InstanceFormat format,
                                      std::string_view base_name);
std::vector<Instance> parse_instances(std::string_view text, InstanceFormat format,
                                      std::string_view base_name);

/// Reads a file; base name defaults to the file stem.
std::vector<Instance> load_instances(const std::string& path,
                                     InstanceFormat format = InstanceFormat::detect);

/// Writes the single-problem layout. Values use the shortest round-trip form.
void serialize_instance(const Instance& instance, std::ostream& out);
std::string serialize_instance(const Instance& instance);

/// Random instance in the Chu & Beasley style: integer weights and profits
/// uniform in [1, 1000], capacity_i = ceil(tightness * sum_j w_ij).
Instance generate_instance(std::size_t items, std::size_t dimensions, double tightness,
                           std::uint64_t seed);

}  // namespace icawica
