#pragma once

#include <stdexcept>
#include <string>

namespace surfdist {

/// Malformed expression text or input file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

/// An operation was called outside its domain (bad symbol kind, degenerate
/// input, identically-zero determinant, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact evaluation failed: a symbol has no value or a denominator vanishes.
class EvaluationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two independent computations that must agree did not.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace surfdist
