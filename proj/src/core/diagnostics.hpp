#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace rsent {

enum class Severity { Error, Warning };

// One finding produced while parsing or validating an input file.  `code` is a
// stable snake_case identifier that tools can match on; `message` is for
// humans.  `line` is 1-based, 0 when the finding is not tied to a line.
struct Diagnostic {
  Severity severity = Severity::Error;
  int line = 0;
  std::string code;
  std::string message;
};

inline bool diag_order(const Diagnostic& a, const Diagnostic& b) {
  if (a.line != b.line) return a.line < b.line;
  return a.code < b.code;
}

inline void sort_diagnostics(std::vector<Diagnostic>& ds) {
  std::stable_sort(ds.begin(), ds.end(), diag_order);
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

// "LINE:CODE:message" — the shape the CLI prints, one finding per line.
std::string format_diagnostic(const Diagnostic& d);

// Result of parsing: a value (present when parsing got far enough to build
// one) plus the findings.  `ok()` means usable: value present, no errors.
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diags;

  bool ok() const { return value.has_value() && !has_errors(diags); }
};

}  // namespace rsent
