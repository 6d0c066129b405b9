#include "krforge/errors.hpp"

#include <iostream>
#include <mutex>
#include <set>

namespace krforge {

std::string_view error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OddFraction: return "OddFraction";
    case ErrorKind::NotBipartiteCertificate: return "NotBipartiteCertificate";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::OddDrop: return "OddDrop";
    case ErrorKind::UnexpectedEinf: return "UnexpectedEinf";
    case ErrorKind::InconsistentDiagram: return "InconsistentDiagram";
    case ErrorKind::NoMarkedEdge: return "NoMarkedEdge";
    case ErrorKind::IllegalSite: return "IllegalSite";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::Inconsistent: return "Inconsistent";
  }
  return "Unknown";
}

int exit_code(ErrorKind k) { return 10 + static_cast<int>(k); }

void warn(const std::string& message) {
  static std::mutex m;
  static std::set<std::string> seen;
  std::lock_guard<std::mutex> lock(m);
  if (seen.insert(message).second) std::cerr << "krforge: warning: " << message << '\n';
}

}  // namespace krforge
