#pragma once

#include <stdexcept>
#include <string>

namespace qsimul {

/// Base class for all qsimul error conditions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidValue : Error {
  using Error::Error;
};
struct ZeroConditionProbability : Error {
  using Error::Error;
};
struct OrthogonalSelection : Error {
  using Error::Error;
};
struct DegeneratePostselection : Error {
  using Error::Error;
};
struct PreconditionUnmet : Error {
  using Error::Error;
};
struct NotEigenstate : Error {
  using Error::Error;
};
struct WrongDimension : Error {
  using Error::Error;
};
struct UnmappedOutcome : Error {
  using Error::Error;
};
struct OutcomeCoverage : Error {
  using Error::Error;
};
struct NoJointDistribution : Error {
  using Error::Error;
};

// Scenario / CLI layer.
struct ParseError : Error {
  using Error::Error;
};
struct UnknownOperation : Error {
  using Error::Error;
};
struct BindingError : Error {
  using Error::Error;
};

}  // namespace qsimul
