#include "icawica/instance.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "icawica/errors.hpp"
#include "icawica/random.hpp"

namespace icawica {

namespace {

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

class TokenReader {
 public:
  explicit TokenReader(std::istream& in)
      : tokens_(std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()) {}

  std::size_t position() const noexcept { return pos_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool done() const noexcept { return pos_ == tokens_.size(); }

  double peek_number(std::size_t offset) const { return to_number(pos_ + offset); }

  double number() {
    double v = to_number(pos_);
    ++pos_;
    return v;
  }

  std::size_t count(const char* what) {
    const std::size_t at = pos_;
    double v = number();
    if (v != std::floor(v) || v > 1e9) throw ParseError(at, std::string(what) + " must be an integer");
    if (v <= 0) throw ParseError(at, std::string(what) + " must be positive");
    return static_cast<std::size_t>(v);
  }

 private:
  double to_number(std::size_t at) const {
    if (at >= tokens_.size()) throw ParseError(at, "unexpected end of input");
    const std::string& tok = tokens_[at];
    double v = 0.0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size() || !std::isfinite(v))
      throw ParseError(at, "not a number: '" + tok + "'");
    return v;
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

Instance read_problem(TokenReader& reader, std::string id) {
  const std::size_t n = reader.count("item count");
  const std::size_t m = reader.count("dimension count");

  std::size_t at = reader.position();
  double optimum = reader.number();
  if (optimum < 0) throw ParseError(at, "negative optimum");

  std::vector<double> profits(n);
  for (auto& p : profits) {
    at = reader.position();
    p = reader.number();
    if (p < 0) throw ParseError(at, "negative profit");
  }
  std::vector<std::vector<double>> weights(m, std::vector<double>(n));
  for (auto& row : weights) {
    for (auto& w : row) {
      at = reader.position();
      w = reader.number();
      if (w < 0) throw ParseError(at, "negative weight");
    }
  }
  std::vector<double> capacities(m);
  for (auto& c : capacities) {
    at = reader.position();
    c = reader.number();
    if (c <= 0) throw ParseError(at, "capacity must be positive");
  }
  std::optional<double> known;
  if (optimum > 0) known = optimum;
  return Instance::create(std::move(id), std::move(profits), weights, std::move(capacities), known);
}

bool looks_single(const TokenReader& reader) {
  if (reader.size() < 2) return false;
  try {
    const double n = reader.peek_number(0);
    const double m = reader.peek_number(1);
    if (n <= 0 || m <= 0 || n != std::floor(n) || m != std::floor(m)) return false;
    return 3.0 + n + m * n + m == static_cast<double>(reader.size());
  } catch (const ParseError&) {
    return false;
  }
}

void write_number(std::ostream& out, double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, end - buf);
}

}  // namespace

Instance Instance::create(std::string id, std::vector<double> profits,
                          const std::vector<std::vector<double>>& weights,
                          std::vector<double> capacities, std::optional<double> known_optimum) {
  const std::size_t n = profits.size();
  const std::size_t m = capacities.size();
  if (n == 0) throw DataError("instance needs at least one item");
  if (m == 0) throw DataError("instance needs at least one dimension");
  if (weights.size() != m) throw DataError("weight matrix must have one row per dimension");
  for (double p : profits)
    if (!finite_nonnegative(p)) throw DataError("profits must be finite and non-negative");
  for (double c : capacities)
    if (!std::isfinite(c) || c <= 0) throw DataError("capacities must be finite and positive");
  if (known_optimum && !finite_nonnegative(*known_optimum))
    throw DataError("known optimum must be finite and non-negative");

  Instance inst;
  inst.id_ = std::move(id);
  inst.profits_ = std::move(profits);
  inst.capacities_ = std::move(capacities);
  inst.known_optimum_ = known_optimum;
  inst.item_weights_.resize(n * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (weights[i].size() != n) throw DataError("weight row length must equal the item count");
    for (std::size_t j = 0; j < n; ++j) {
      if (!finite_nonnegative(weights[i][j])) throw DataError("weights must be finite and non-negative");
      inst.item_weights_[j * m + i] = weights[i][j];
    }
  }
  return inst;
}

std::vector<double> Instance::weight_row(std::size_t dim) const {
  std::vector<double> row(items());
  for (Item j = 0; j < items(); ++j) row[j] = weight(dim, j);
  return row;
}

Instance Instance::with_id(std::string id) const {
  Instance copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

std::vector<Instance> parse_instances(std::istream& in, InstanceFormat format,
                                      std::string_view base_name) {
  TokenReader reader(in);
  if (format == InstanceFormat::detect)
    format = looks_single(reader) ? InstanceFormat::single : InstanceFormat::multi;

  std::vector<Instance> out;
  if (format == InstanceFormat::single) {
    out.push_back(read_problem(reader, std::string(base_name)));
  } else {
    const std::size_t k = reader.count("problem count");
    for (std::size_t p = 0; p < k; ++p)
      out.push_back(read_problem(reader, std::string(base_name) + "." + std::to_string(p)));
  }
  if (!reader.done()) throw ParseError(reader.position(), "unexpected trailing data");
  return out;
}

std::vector<Instance> parse_instances(std::string_view text, InstanceFormat format,
                                      std::string_view base_name) {
  std::istringstream in{std::string(text)};
  return parse_instances(in, format, base_name);
}

std::vector<Instance> load_instances(const std::string& path, InstanceFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open instance file: " + path);
  try {
    return parse_instances(in, format, std::filesystem::path(path).stem().string());
  } catch (const ParseError& e) {
    throw ParseError(e.token(), path + ": " + e.what());
  }
}

void serialize_instance(const Instance& instance, std::ostream& out) {
  const std::size_t n = instance.items();
  const std::size_t m = instance.dimensions();
  out << n << ' ' << m << ' ';
  write_number(out, instance.known_optimum().value_or(0.0));
  out << '\n';
  auto line = [&](auto&& value_at, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (k) out << ' ';
      write_number(out, value_at(k));
    }
    out << '\n';
  };
  line([&](std::size_t j) { return instance.profit(j); }, n);
  for (std::size_t i = 0; i < m; ++i) line([&](std::size_t j) { return instance.weight(i, j); }, n);
  line([&](std::size_t i) { return instance.capacity(i); }, m);
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  serialize_instance(instance, out);
  return out.str();
}

Instance generate_instance(std::size_t items, std::size_t dimensions, double tightness,
                           std::uint64_t seed) {
  if (items == 0 || dimensions == 0) throw DataError("generator needs n >= 1 and m >= 1");
  if (!(tightness > 0.0 && tightness < 1.0)) throw DataError("tightness must lie in (0, 1)");

  Rng rng(seed);
  std::vector<std::vector<double>> weights(dimensions, std::vector<double>(items));
  std::vector<double> capacities(dimensions);
  for (std::size_t i = 0; i < dimensions; ++i) {
    double row_sum = 0.0;
    for (auto& w : weights[i]) {
      w = static_cast<double>(rng.between(1, 1000));
      row_sum += w;
    }
    capacities[i] = std::ceil(tightness * row_sum);
  }
  std::vector<double> profits(items);
  for (auto& p : profits) p = static_cast<double>(rng.between(1, 1000));

  std::ostringstream id;
  id << "gen-" << items << "x" << dimensions << "-t" << tightness << "-s" << seed;
  return Instance::create(id.str(), std::move(profits), weights, std::move(capacities));
}

}  // namespace icawica
