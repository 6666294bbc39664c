#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmodular {

enum class ErrorKind {
  InvalidPrecision,
  InvalidArgument,
  NotInvertible,
  UnsupportedTwist,
  PoleAtArgument,
  FractionalExponent,
  UnknownLevel,
  UnsupportedWeight,
  UnknownGenerator,
  EmptySpace,
  InsufficientPrecision,
  NotInSpan,
  UnknownIdentity,
  SyntaxError,
  WeightMismatch,
  RegistryValidation,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception type; the kind
// lets callers (and the CLI exit-code mapping) dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qmodular
