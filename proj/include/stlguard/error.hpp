#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stlguard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formula text did not match the grammar. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Evaluation against a trajectory failed (missing channel, bad time index,
/// formula outside the class an evaluator supports).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A configuration or serialized document violated its invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Every logit is -infinity, so no action can be sampled.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace stlguard
