#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fockmod {

enum class ErrorKind {
  ZeroElement,
  ZeroScalar,
  UnsupportedDomain,
  DomainMismatch,
  InvalidInput,
  DivisionByZero,
  DimensionMismatch,
  NotSubmodule,
  NotSubgroup,
  TorsionPresent,
  AmbientMismatch,
  EmptyList,
  InfiniteGroup,
  NotADirectProduct,
  WindowTooSmall,
  OutOfWindow,
  EmptyInterior,
  InfiniteQuotient,
  EmptyFamily,
  NotEquivariant,
  NotSurjective,
  DegreeOverflow,
  ParseError,
  UnsupportedKind,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (tests, the CLI) can dispatch on it without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace fockmod
