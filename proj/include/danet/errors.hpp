#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace danet {

/// Input exceeds a hard structural limit of the requested algorithm
/// (e.g. exact recursion beyond 64 labels, enumeration beyond 9 vertices).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph text. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every particle carries zero weight. The estimate is exactly 0; this is a
/// signal distinct from a numeric fault.
class EstimatorCollapse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Posterior mass is identically zero on the evaluation grid.
class DegeneratePosterior : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chain initialization failed (no positive-likelihood start found).
class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace danet
