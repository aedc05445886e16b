#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace borderforge {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define BORDERFORGE_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(what) {}              \
    const char* kind() const noexcept override { return #Name; }         \
  }

BORDERFORGE_DEFINE_ERROR(NotPrime);
BORDERFORGE_DEFINE_ERROR(ZeroInverse);
BORDERFORGE_DEFINE_ERROR(DimensionMismatch);
BORDERFORGE_DEFINE_ERROR(ExponentOverflow);
BORDERFORGE_DEFINE_ERROR(ParseError);
BORDERFORGE_DEFINE_ERROR(NotAnOrderIdeal);
BORDERFORGE_DEFINE_ERROR(DuplicateLeadingTerm);
BORDERFORGE_DEFINE_ERROR(MissingBorderGenerator);
BORDERFORGE_DEFINE_ERROR(DegreeBudgetExceeded);
BORDERFORGE_DEFINE_ERROR(OracleUnavailable);
BORDERFORGE_DEFINE_ERROR(InvalidArity);
BORDERFORGE_DEFINE_ERROR(TooManyPoints);
BORDERFORGE_DEFINE_ERROR(RankDeficient);
BORDERFORGE_DEFINE_ERROR(IoError);
BORDERFORGE_DEFINE_ERROR(VariantDisagreement);
BORDERFORGE_DEFINE_ERROR(ConfigError);

#undef BORDERFORGE_DEFINE_ERROR

/// Malformed dataset line; carries the 1-based line number.
class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  const char* kind() const noexcept override { return "SchemaError"; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace borderforge
