#include "diagnostics.hpp"

namespace rsent {

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = std::to_string(d.line);
  out += ':';
  out += d.code;
  out += ':';
  if (d.severity == Severity::Warning) out += "warning: ";
  out += d.message;
  return out;
}

}  // namespace rsent
