#include "icawica/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "icawica/errors.hpp"

namespace icawica {

using nlohmann::json;

std::size_t IcaConfig::population_for(std::size_t items) const {
  if (population) return *population;
  return items < 500 ? 4096 : 512;
}

std::size_t IcaConfig::epsilon_for(std::size_t items) const {
  if (stagnation_epsilon) return *stagnation_epsilon;
  if (items >= 500) return items;
  return static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(items) - 1e-9));
}

std::size_t IcaConfig::imperialist_count(std::size_t pop) const {
  return static_cast<std::size_t>(std::ceil(imperialist_fraction * static_cast<double>(pop) - 1e-9));
}

void IcaConfig::validate(std::size_t items) const {
  assimilation().validate();
  if (!(imperialist_fraction > 0.0 && imperialist_fraction < 1.0))
    throw std::invalid_argument("imperialist_fraction must lie in (0, 1)");
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw std::invalid_argument("xi must be >= 0");
  if (stagnation_epsilon && *stagnation_epsilon == 0)
    throw std::invalid_argument("stagnation_epsilon must be positive");
  if (max_seconds && !(*max_seconds > 0.0)) throw std::invalid_argument("max_seconds must be positive");
  if (threads == 0) throw std::invalid_argument("threads must be positive");
  const std::size_t pop = population_for(items);
  const std::size_t imps = imperialist_count(pop);
  if (imps < 1) throw std::invalid_argument("population too small for one imperialist");
  if (imps >= pop) throw std::invalid_argument("population leaves no colonies");
}

namespace {

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw DataError("config key '" + key + "' has the wrong type");
  }
}

std::size_t get_count(const json& value, const std::string& key) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
    throw DataError("config key '" + key + "' must be a non-negative integer");
  return value.get<std::size_t>();
}

}  // namespace

IcaConfig parse_config(std::string_view json_text, IcaConfig base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("config must be a JSON object");

  IcaConfig c = base;
  for (const auto& [key, value] : doc.items()) {
    const bool is_auto = value.is_null() || (value.is_string() && value.get<std::string>() == "auto");
    if (key == "population") {
      c.population = is_auto ? std::nullopt : std::optional(get_count(value, key));
    } else if (key == "stagnation_epsilon") {
      c.stagnation_epsilon = is_auto ? std::nullopt : std::optional(get_count(value, key));
    } else if (key == "max_iterations") {
      c.max_iterations = value.is_null() ? std::nullopt : std::optional(get_count(value, key));
    } else if (key == "max_seconds") {
      c.max_seconds = value.is_null() ? std::nullopt : std::optional(get_as<double>(value, key));
    } else if (key == "imperialist_fraction") {
      c.imperialist_fraction = get_as<double>(value, key);
    } else if (key == "local_iters") {
      c.local_iters = get_count(value, key);
    } else if (key == "beta") {
      c.beta = get_as<double>(value, key);
    } else if (key == "independence_rate") {
      c.independence_rate = get_as<double>(value, key);
    } else if (key == "xi") {
      c.xi = get_as<double>(value, key);
    } else if (key == "seed") {
      if (!value.is_number_integer()) throw DataError("config key 'seed' must be an integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "threads") {
      c.threads = get_count(value, key);
    } else {
      throw DataError("unknown config key '" + key + "'");
    }
  }
  return c;
}

IcaConfig load_config(const std::string& path, IcaConfig base) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), base);
}

std::string config_to_json(const IcaConfig& c) {
  auto opt = [](const auto& v) -> json { return v ? json(*v) : json("auto"); };
  auto cap = [](const auto& v) -> json { return v ? json(*v) : json(nullptr); };
  json doc = {
      {"population", opt(c.population)},
      {"imperialist_fraction", c.imperialist_fraction},
      {"local_iters", c.local_iters},
      {"beta", c.beta},
      {"independence_rate", c.independence_rate},
      {"xi", c.xi},
      {"stagnation_epsilon", opt(c.stagnation_epsilon)},
      {"max_iterations", cap(c.max_iterations)},
      {"max_seconds", cap(c.max_seconds)},
      {"seed", c.seed},
      {"threads", c.threads},
  };
  return doc.dump();
}

}  // namespace icawica
