#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opx {

enum class Errc {
  ParameterOutOfRange,
  NotPositiveDefinite,
  ShiftInsideSupport,
  KernelUndefined,
  IteratedUndefined,
  DegenerateDenominator,
  EvalAtShift,
  PoleAtSample,
  ConstraintViolated,
  InvalidAlphas,
  ZeroDenominator,
  NonConvergent,
  Divergent,
  DivisionByZero,
  IndexOutOfRange,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI and tests can dispatch on the kind of failure rather than the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace opx
