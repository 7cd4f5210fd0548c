#pragma once

#include <stdexcept>
#include <string>

namespace nb {

/// Failure categories; the CLI maps them onto exit codes 2, 3 and 4.
enum class ErrorKind { usage, validation, computation };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed input: bad flags, unparsable JSON, unknown field names.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

/// Well-formed input that violates a domain invariant (dependent points, k too large, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

/// The computation itself cannot proceed (non-immersive center, exhausted retries, ...).
class ComputationError : public Error {
 public:
  explicit ComputationError(const std::string& what) : Error(ErrorKind::computation, what) {}
};

const char* to_string(ErrorKind kind) noexcept;
int exit_code(ErrorKind kind) noexcept;

}  // namespace nb
