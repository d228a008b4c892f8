#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arstab {

enum class ErrorKind {
  CompositeModulus,
  SizeGuard,
  MixedFields,
  DivisionByZero,
  NotAnExtension,
  NotInTower,
  DimensionMismatch,
  OrderMismatch,
  HypothesisViolated,
  CertificateInvalid,
  NotEnoughPoints,
  TowerMismatch,
  ConfigError,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// the CLI can map it onto an exit code and reports can name it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Upper bound on the number of field-element operations any enumeration
/// may perform before failing with SizeGuard.
inline constexpr double kWorkGuard = 1e8;

}  // namespace arstab
