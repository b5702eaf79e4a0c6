#pragma once

#include <stdexcept>
#include <string>

namespace ncinv {

/// Base class for every error raised by the library. `kind()` is a stable
/// identifier used by reports and the CLI exit logic.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define NCINV_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  };

NCINV_DEFINE_ERROR(InconsistentSystem)
NCINV_DEFINE_ERROR(NotCommuting)
NCINV_DEFINE_ERROR(NotFiniteOrder)
NCINV_DEFINE_ERROR(DimensionMismatch)
NCINV_DEFINE_ERROR(DivisionByZero)
NCINV_DEFINE_ERROR(UnknownSymbol)
NCINV_DEFINE_ERROR(SingularAtPoint)
NCINV_DEFINE_ERROR(DegeneracyNotWitnessed)
NCINV_DEFINE_ERROR(NoScalarCenter)
NCINV_DEFINE_ERROR(NotAGroup)
NCINV_DEFINE_ERROR(UnknownFamily)
NCINV_DEFINE_ERROR(BudgetExceeded)
NCINV_DEFINE_ERROR(NotNormal)
NCINV_DEFINE_ERROR(NotAbelian)
NCINV_DEFINE_ERROR(NotFaithful)
NCINV_DEFINE_ERROR(NotComplete)
NCINV_DEFINE_ERROR(NotSolvable)
NCINV_DEFINE_ERROR(NotInvariant)
NCINV_DEFINE_ERROR(NotUnitary)
NCINV_DEFINE_ERROR(NotLinearAction)
NCINV_DEFINE_ERROR(CharactersDoNotGenerate)
NCINV_DEFINE_ERROR(FormatError)

#undef NCINV_DEFINE_ERROR

/// Parse failure with the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t pos)
      : Error("SyntaxError", what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace ncinv
