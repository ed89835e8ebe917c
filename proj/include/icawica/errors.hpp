#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace icawica {

/// Malformed or invalid input data (instance files, manifests, configs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance stream error located at a zero-based token position.
class ParseError : public DataError {
 public:
  ParseError(std::size_t token, const std::string& what)
      : DataError("token " + std::to_string(token) + ": " + what), token_(token) {}

  std::size_t token() const noexcept { return token_; }

 private:
  std::size_t token_;
};

}  // namespace icawica
