#pragma once

#include <stdexcept>
#include <string>

namespace mifno {

// Typed error hierarchy; every failure mode surfaced by the library is one
// of these so callers can branch on category rather than message text.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
  using Error::Error;
};
struct IndexError : Error {
  using Error::Error;
};
struct ConsistencyError : Error {
  using Error::Error;
};
struct InvalidOccupation : Error {
  using Error::Error;
};
struct InvalidPartition : Error {
  using Error::Error;
};
struct DegeneracyError : Error {
  using Error::Error;
};
struct PolicyError : Error {
  using Error::Error;
};
struct OrderError : Error {
  using Error::Error;
};
struct DependencyError : Error {
  using Error::Error;
};
struct IncompleteExpansion : Error {
  using Error::Error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double residual)
      : Error(msg), best_residual(residual) {}
  double best_residual;
};
struct CapacityError : Error {
  using Error::Error;
};
struct InvalidAmplitude : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace mifno
