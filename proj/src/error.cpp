#include "itd/error.hpp"

namespace itd {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::Io: return 3;
    case ErrorKind::Schema: return 4;
    case ErrorKind::Shape: return 4;
    case ErrorKind::Parameter: return 5;
    case ErrorKind::Class: return 5;
    case ErrorKind::Numerical: return 6;
  }
  return 1;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage: return "usage error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Class: return "class error";
    case ErrorKind::Numerical: return "numerical error";
  }
  return "error";
}

}  // namespace itd
