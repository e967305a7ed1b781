#pragma once

#include <stdexcept>
#include <string>

namespace poik {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Rejected input: bad parameter values (k < 1, lambda <= 0, empty data, ...).
class InvalidParamsError : public Error {
  public:
    using Error::Error;
};

// Input is structurally valid but outside a documented hard cap of an
// exact-arithmetic path.
class UnsupportedRangeError : public Error {
  public:
    using Error::Error;
};

// A numerical result could not be certified: independent evaluation paths
// disagree, or a comparison stayed undecidable at maximum precision.
class PrecisionLossError : public Error {
  public:
    using Error::Error;
};

// A near-tie between pmf entries survived extended-precision re-evaluation.
class AmbiguousTieError : public PrecisionLossError {
  public:
    using PrecisionLossError::PrecisionLossError;
};

// Verification of a computed root against the full series failed.
class InconsistentRootError : public PrecisionLossError {
  public:
    using PrecisionLossError::PrecisionLossError;
};

// Two mode-set transitions could not be separated at the bisection tolerance.
class UnresolvedTransitionError : public PrecisionLossError {
  public:
    using PrecisionLossError::PrecisionLossError;
};

// The two smallest unit roots are closer than the tie threshold; picking one
// of them as "the" first double mode would be arbitrary.
class MultiWayTieError : public PrecisionLossError {
  public:
    using PrecisionLossError::PrecisionLossError;
};

// Input data violates a structural requirement of a computation (e.g. a
// mode/mean pair with mode >= mean fed to the difference fit).
class DataIntegrityError : public Error {
  public:
    using Error::Error;
};

// A condition that is mathematically impossible was observed; indicates an
// implementation bug, not a user error.
class InternalError : public Error {
  public:
    using Error::Error;
};

}  // namespace poik
