#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace krforge {

enum class ErrorKind {
  ParseError,
  OddFraction,
  NotBipartiteCertificate,
  NotARoot,
  TooLarge,
  OddDrop,
  UnexpectedEinf,
  InconsistentDiagram,
  NoMarkedEdge,
  IllegalSite,
  BoundaryMismatch,
  NotInvertible,
  Inconsistent,
};

std::string_view error_name(ErrorKind k);

// Process exit code for a failed CLI job; 0 and 1 are reserved for success and usage errors.
int exit_code(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Emits a diagnostic on stderr once per distinct message.
void warn(const std::string& message);

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace krforge
