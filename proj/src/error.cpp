#include "fockmod/error.hpp"

namespace fockmod {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSubmodule: return "NotSubmodule";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::TorsionPresent: return "TorsionPresent";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::InfiniteGroup: return "InfiniteGroup";
    case ErrorKind::NotADirectProduct: return "NotADirectProduct";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::InfiniteQuotient: return "InfiniteQuotient";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace fockmod
