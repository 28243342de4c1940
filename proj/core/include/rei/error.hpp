#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rei {

/// Syntax error in regex concrete syntax. `position` is a 0-based byte
/// offset into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(std::move(message)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Malformed or internally inconsistent data in an input file.
/// `line` is 1-based; 0 means "not tied to a specific line".
class DataError : public std::runtime_error {
 public:
  explicit DataError(std::string message, std::size_t line = 0)
      : std::runtime_error(std::move(message)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Requested parameters cannot be satisfied (e.g. more distinct strings
/// than the universe contains, or an unsatisfiable train/test split).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource cap would be exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rei
