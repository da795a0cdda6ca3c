#pragma once

#include <string>
#include <tuple>

namespace ckm {

enum class Severity { warning, error };

struct SourceLocation {
  std::string file;
  int line = 1;
  int column = 1;

  bool operator==(const SourceLocation&) const = default;
};

struct Diagnostic {
  Severity severity = Severity::warning;
  SourceLocation location;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

inline bool diagnostic_order(const Diagnostic& a, const Diagnostic& b) {
  return std::tie(a.location.file, a.location.line, a.location.column, a.message) <
         std::tie(b.location.file, b.location.line, b.location.column, b.message);
}

/// "file:line:col: severity: message"
std::string to_string(const Diagnostic& diagnostic);

const char* to_string(Severity severity);

}  // namespace ckm
