#pragma once

#include <stdexcept>
#include <string>

namespace samlab {

// Bad user input: unknown ids, malformed flags/config, parameter constraint
// violations. CLI maps this to exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Iterate norm exceeded the blow-up threshold. CLI maps this to exit code 2.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

// A point, gradient, or function value became NaN/Inf mid-computation.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed persisted file (CSV/JSON).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace samlab
