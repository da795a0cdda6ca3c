#include "ckm/diagnostics.hpp"

#include <sstream>

namespace ckm {

const char* to_string(Severity severity) {
  return severity == Severity::error ? "error" : "warning";
}

std::string to_string(const Diagnostic& diagnostic) {
  std::ostringstream out;
  out << diagnostic.location.file << ':' << diagnostic.location.line << ':'
      << diagnostic.location.column << ": " << to_string(diagnostic.severity) << ": "
      << diagnostic.message;
  return out.str();
}

}  // namespace ckm
