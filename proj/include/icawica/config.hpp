#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "icawica/assimilation.hpp"

namespace icawica {

/// Algorithm hyper-parameters and termination policy. Unset optionals
/// select the size-dependent defaults.
struct IcaConfig {
  std::optional<std::size_t> population;  ///< auto: 4096 if n < 500, else 512
  double imperialist_fraction = 0.4;
  std::size_t local_iters = 3;
  double beta = 0.5;
  double independence_rate = 0.7;
  double xi = 0.05;
  std::optional<std::size_t> stagnation_epsilon;  ///< auto: ceil(0.1 n) if n < 500, else n
  std::optional<std::size_t> max_iterations;
  std::optional<double> max_seconds;
  std::uint64_t seed = 0;
  /// Worker threads for the colony update phase. Does not affect results.
  std::size_t threads = 1;

  std::size_t population_for(std::size_t items) const;
  std::size_t epsilon_for(std::size_t items) const;
  /// ceil(imperialist_fraction * population).
  std::size_t imperialist_count(std::size_t population) const;
  AssimilationParams assimilation() const { return {beta, local_iters, independence_rate}; }

  /// Throws std::invalid_argument on out-of-range fields. `items` selects
  /// the population used for the size checks when population is auto.
  void validate(std::size_t items) const;

  bool operator==(const IcaConfig&) const = default;
};

/// Applies a flat JSON object on top of `base`. Keys are the IcaConfig
/// field names; "auto" (or null) resets population/stagnation_epsilon.
/// Unknown keys and wrongly typed values throw DataError.
IcaConfig parse_config(std::string_view json_text, IcaConfig base = {});
IcaConfig load_config(const std::string& path, IcaConfig base = {});
std::string config_to_json(const IcaConfig& config);

}  // namespace icawica
