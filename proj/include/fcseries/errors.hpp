#pragma once

#include <stdexcept>
#include <string>

namespace fcs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain.
struct InvalidInput : Error {
  using Error::Error;
};

struct DegenerateExponent : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct DimensionMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct DegreeOutOfRange : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct BranchOutOfRange : InvalidInput {
  using InvalidInput::InvalidInput;
};

// A check that must hold by construction failed.
struct InternalInconsistency : Error {
  using Error::Error;
};

struct OracleFailure : Error {
  using Error::Error;
};

struct Indeterminate : Error {
  using Error::Error;
};

struct NoActiveBoundary : Error {
  using Error::Error;
};

}  // namespace fcs
