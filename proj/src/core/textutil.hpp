#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsent {

// One meaningful input line: 1-based number plus text with the trailing
// '\r' (if any) removed.  Blank lines and '#' comment lines are dropped.
struct SourceLine {
  int number = 0;
  std::string text;
};

inline std::vector<SourceLine> split_source_lines(std::string_view text) {
  std::vector<SourceLine> out;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    size_t first = raw.find_first_not_of(" \t");
    if (first != std::string_view::npos && raw[first] != '#')
      out.push_back({number, std::string(raw)});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Tags (activities, objects) are lowercase identifiers so that log output
// has one canonical spelling.
inline bool is_tag(const std::string& s) {
  if (!is_identifier(s)) return false;
  for (char c : s)
    if (std::isupper(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::optional<int> parse_int(const std::string& s, int min, int max) {
  if (s.empty()) return std::nullopt;
  long v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + (c - '0');
    if (v > max) return std::nullopt;
  }
  if (v < min) return std::nullopt;
  return static_cast<int>(v);
}

}  // namespace rsent
