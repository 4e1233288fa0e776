#pragma once

#include <stdexcept>
#include <string>

namespace leibniz {

// Stable numeric codes; the C API and the CLI surface these unchanged.
enum class ErrorCode : int {
  kOk = 0,
  kDimension = 1,
  kNotInClass = 2,
  kInconsistentForm = 3,
  kUnsupportedField = 4,
  kNotAnIdeal = 5,
  kSingular = 6,
  kSchema = 7,
  kBudget = 8,
  kInvalidArgument = 9,
  kInternal = 10,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define LEIBNIZ_DEFINE_ERROR(Name, Code)                                   \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  };

LEIBNIZ_DEFINE_ERROR(DimensionError, kDimension)
LEIBNIZ_DEFINE_ERROR(NotInClassError, kNotInClass)
LEIBNIZ_DEFINE_ERROR(InconsistentFormError, kInconsistentForm)
LEIBNIZ_DEFINE_ERROR(UnsupportedFieldError, kUnsupportedField)
LEIBNIZ_DEFINE_ERROR(NotAnIdealError, kNotAnIdeal)
LEIBNIZ_DEFINE_ERROR(SingularMatrixError, kSingular)
LEIBNIZ_DEFINE_ERROR(SchemaError, kSchema)
LEIBNIZ_DEFINE_ERROR(BudgetError, kBudget)
LEIBNIZ_DEFINE_ERROR(InvalidArgumentError, kInvalidArgument)
LEIBNIZ_DEFINE_ERROR(InternalError, kInternal)

#undef LEIBNIZ_DEFINE_ERROR

}  // namespace leibniz
