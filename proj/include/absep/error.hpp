#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace absep {

enum class ErrorKind {
  NonHermitian,
  NonSquare,
  NoConvergence,
  NotPSD,
  TraceNotOne,
  DimensionMismatch,
  ParamOutOfRange,
  NotNormalized,
  NotUnitary,
  LengthMismatch,
  ZeroNormalizer,
  OrderTooLow,
  NotTwoByD,
  NotPositive,
  NoSignChange,
  DegenerateMap,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code logic) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by validation when the smallest eigenvalue falls below the PSD floor.
class NotPsdError : public Error {
 public:
  NotPsdError(double min_eigenvalue, const std::string& what)
      : Error(ErrorKind::NotPSD, what), min_eigenvalue_(min_eigenvalue) {}

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

}  // namespace absep
