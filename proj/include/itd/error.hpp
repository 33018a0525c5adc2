#pragma once

#include <stdexcept>
#include <string>

namespace itd {

/// Failure classes. Each maps onto one documented process exit code.
enum class ErrorKind {
  Usage,          // bad flags or config values
  Io,             // unreadable / unwritable stream
  Schema,         // malformed file, missing columns, model/data mismatch
  Parameter,      // an operation's numeric precondition does not hold
  Shape,          // dimension mismatch between operands
  Class,          // label set unsuitable (single class, class too small)
  Numerical,      // non-convergence or divergence
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define ITD_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

ITD_DEFINE_ERROR(UsageError, Usage)
ITD_DEFINE_ERROR(IoError, Io)
ITD_DEFINE_ERROR(SchemaError, Schema)
ITD_DEFINE_ERROR(ParameterError, Parameter)
ITD_DEFINE_ERROR(ShapeError, Shape)
ITD_DEFINE_ERROR(ClassError, Class)
ITD_DEFINE_ERROR(NumericalError, Numerical)

#undef ITD_DEFINE_ERROR

/// Process exit code for a failure class (0 is reserved for success).
int exit_code(ErrorKind kind) noexcept;
const char* to_string(ErrorKind kind) noexcept;

}  // namespace itd
