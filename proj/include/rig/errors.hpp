#pragma once

#include <stdexcept>
#include <string>

namespace rig {

// Base type for all library errors. Callers that need to distinguish usage
// errors (bad config) from numerical degeneracy catch the subtypes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

// Thrown when a basis / seed family is numerically rank deficient beyond the
// advertised threshold. Carries the measured condition number when known.
struct DegenerateError : Error {
  explicit DegenerateError(const std::string& what, double cond = -1.0)
      : Error(what), condition(cond) {}
  double condition;
};

// An operation's documented precondition failed (e.g. operator not
// g2-selfadjoint within tolerance).
struct PreconditionError : Error {
  using Error::Error;
};

// Configuration / CLI usage errors; message starts with the offending field
// path where applicable ("suite[2].tolerance: ...").
struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

#define RIG_REQUIRE(cond, extype, msg)            \
  do {                                            \
    if (!(cond)) throw ::rig::extype(msg);        \
  } while (0)

}  // namespace rig
