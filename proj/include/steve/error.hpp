#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace steve {

/// Failure categories surfaced by the library. Each maps onto a CLI exit code.
enum class ErrorKind {
  Usage,
  Io,
  SizeMismatch,
  NonFinite,
  UnknownDtype,
  Format,
  Validation,
  Internal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Io: return "io";
    case ErrorKind::SizeMismatch: return "size-mismatch";
    case ErrorKind::NonFinite: return "non-finite";
    case ErrorKind::UnknownDtype: return "unknown-dtype";
    case ErrorKind::Format: return "format";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

/// 0 ok, 2 usage, 3 I/O, 4 format, 5 validation; internal bugs exit with 1.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::Io: return 3;
    case ErrorKind::SizeMismatch:
    case ErrorKind::NonFinite:
    case ErrorKind::UnknownDtype:
    case ErrorKind::Format: return 4;
    case ErrorKind::Validation: return 5;
    case ErrorKind::Internal: return 1;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

/// Broken internal invariant; never expected on valid input.
inline void check_internal(bool condition, const char* what) {
  if (!condition) fail(ErrorKind::Internal, what);
}

}  // namespace steve
