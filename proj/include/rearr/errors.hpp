#pragma once

#include <stdexcept>
#include <string>

namespace rearr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the domain contract (t not in (0,1], epsilon out of range, ...).
struct DomainError : Error {
  using Error::Error;
};

// Generated-partition tail mass is not smaller than every prefix length;
// monotone rearrangement of the prefix would be wrong. Deepen and retry.
struct TailDominates : Error {
  using Error::Error;
};

// Requested exactness is unreachable at this materialization depth.
struct DepthError : Error {
  using Error::Error;
};

// Hypotheses of a constructive lemma do not hold for the given instance.
struct PreconditionError : Error {
  using Error::Error;
};

struct OracleLimit : Error {
  using Error::Error;
};

struct WitnessUnavailable : Error {
  using Error::Error;
};

struct NotApplicable : Error {
  using Error::Error;
};

}  // namespace rearr
