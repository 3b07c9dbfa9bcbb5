#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diagnostics.hpp"
#include "simtime.hpp"

namespace rsent {

// One line of simulator output:
//   t=d2:07:30 kind=delivered reminder=meds mode=proactive to=momA loc=kitchen text=...
// Keys are fixed per kind and emitted in a fixed order; values never contain
// spaces except for `text`, which is always last and runs to end of line.
// Runs are compared byte-for-byte, so formatting is part of the contract.
struct LogRecord {
  SimTime time;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  const std::string* field(const std::string& key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return &v;
    return nullptr;
  }
};

std::string format_record(const LogRecord& rec);

std::optional<LogRecord> parse_record(const std::string& line, std::string* why = nullptr);

struct EventLog {
  std::vector<LogRecord> records;

  void add(LogRecord rec) { records.push_back(std::move(rec)); }
  std::string to_text() const;
};

Parsed<std::vector<LogRecord>> parse_log(const std::string& text);

// Canonical rendering of a set-valued field: comma-joined sorted items,
// "-" when empty.
std::string join_set(const std::set<std::string>& items);
std::string join_list(const std::vector<std::string>& items);
std::vector<std::string> split_list(const std::string& value);

}  // namespace rsent
