// SPDX-License-Identifier: Apache-2.0

#ifndef OPCALC_ERRORS_HPP
#define OPCALC_ERRORS_HPP

#include <stdexcept>

namespace opcalc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated preconditions (bad parameters, spectra in forbidden places, ...).
// The CLI maps these to exit code 3.
struct PreconditionError : Error {
  using Error::Error;
};

struct SingularResolvent : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct SpectrumOnContour : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct SpectrumOutsideSector : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct NoDecay : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct DegenerateRegion : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct InvalidAngles : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct InvalidParameters : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct NotInCommutant : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct LowerBoundViolated : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct MaximizerAtBoundary : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct HypothesesViolated : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct Overflow : PreconditionError {
  using PreconditionError::PreconditionError;
};

// A function handle threw while being evaluated on an in-region grid point.
struct EvaluationFailure : Error {
  using Error::Error;
};

// An adaptive scheme hit its budget without stabilizing.  CLI exit code 2.
struct NonConvergence : Error {
  using Error::Error;
};

// Unparseable or schema-violating input.  CLI exit code 4.
struct MalformedInput : Error {
  using Error::Error;
};

}  // namespace opcalc

#endif  // OPCALC_ERRORS_HPP
