#pragma once

#include <stdexcept>
#include <string>

namespace skolem {

struct SkolemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : SkolemError {
  using SkolemError::SkolemError;
};
struct NonIsolatedRoot : SkolemError {
  using SkolemError::SkolemError;
};
struct DegreeCapExceeded : SkolemError {
  using SkolemError::SkolemError;
};
struct NotRealElement : SkolemError {
  using SkolemError::SkolemError;
};
struct NotRealValued : SkolemError {
  using SkolemError::SkolemError;
};
struct DimensionMismatch : SkolemError {
  using SkolemError::SkolemError;
};
struct SizeCapExceeded : SkolemError {
  using SkolemError::SkolemError;
};
struct FixedCase : SkolemError {
  using SkolemError::SkolemError;
};
struct FieldExtensionNeeded : SkolemError {
  using SkolemError::SkolemError;
};
struct CapExceeded : SkolemError {
  using SkolemError::SkolemError;
};
struct DimensionTooHigh : SkolemError {
  using SkolemError::SkolemError;
};
struct UnboundedFunction : SkolemError {
  using SkolemError::SkolemError;
};
struct AmbiguousBranch : SkolemError {
  using SkolemError::SkolemError;
};
struct G2LowerBoundFailed : SkolemError {
  using SkolemError::SkolemError;
};
struct MissingBakerParams : SkolemError {
  using SkolemError::SkolemError;
};
struct RationalTerminated : SkolemError {
  using SkolemError::SkolemError;
};
struct OracleInconclusive : SkolemError {
  using SkolemError::SkolemError;
};

}  // namespace skolem
