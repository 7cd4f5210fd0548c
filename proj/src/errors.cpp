#include "normbundle/errors.hpp"

namespace nb {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::validation: return "validation";
    case ErrorKind::computation: return "computation";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return 2;
    case ErrorKind::validation: return 3;
    case ErrorKind::computation: return 4;
  }
  return 1;
}

}  // namespace nb
