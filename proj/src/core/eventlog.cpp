#include "eventlog.hpp"

#include "textutil.hpp"

namespace rsent {

std::string format_record(const LogRecord& rec) {
  std::string out = "t=" + format_sim_time(rec.time) + " kind=" + rec.kind;
  for (const auto& [k, v] : rec.fields) {
    out += ' ';
    out += k;
    out += '=';
    out += v.empty() ? "-" : v;
  }
  return out;
}

std::optional<LogRecord> parse_record(const std::string& line, std::string* why) {
  auto fail = [&](const char* msg) -> std::optional<LogRecord> {
    if (why) *why = msg;
    return std::nullopt;
  };

  LogRecord rec;
  size_t pos = 0;
  bool first = true;
  while (pos < line.size()) {
    size_t eq = line.find('=', pos);
    if (eq == std::string::npos) return fail("expected key=value");
    std::string key = line.substr(pos, eq - pos);
    if (!is_identifier(key)) return fail("bad key");
    std::string value;
    if (key == "text") {
      value = line.substr(eq + 1);  // rest of line, spaces included
      pos = line.size();
    } else {
      size_t sp = line.find(' ', eq + 1);
      if (sp == std::string::npos) {
        value = line.substr(eq + 1);
        pos = line.size();
      } else {
        value = line.substr(eq + 1, sp - eq - 1);
        pos = sp + 1;
      }
      if (value.empty()) return fail("empty value");
    }

    if (first) {
      if (key != "t") return fail("record must start with t=");
      // d<D>:HH:MM
      if (value.size() < 7 || value[0] != 'd') return fail("bad timestamp");
      size_t colon = value.find(':');
      if (colon == std::string::npos || value.size() != colon + 6) return fail("bad timestamp");
      auto day = parse_int(value.substr(1, colon - 1), 1, 100000);
      auto clock = parse_clock(value.substr(colon + 1));
      if (!day || !clock || *clock >= kMinutesPerDay) return fail("bad timestamp");
      rec.time = {*day, *clock};
      first = false;
      continue;
    }
    if (rec.kind.empty()) {
      if (key != "kind" || !is_identifier(value)) return fail("second field must be kind=");
      rec.kind = value;
      continue;
    }
    rec.fields.emplace_back(key, value == "-" ? std::string() : value);
  }
  if (first || rec.kind.empty()) return fail("record too short");
  return rec;
}

std::string EventLog::to_text() const {
  std::string out;
  for (const auto& rec : records) {
    out += format_record(rec);
    out += '\n';
  }
  return out;
}

Parsed<std::vector<LogRecord>> parse_log(const std::string& text) {
  Parsed<std::vector<LogRecord>> result;
  std::vector<LogRecord> records;
  int number = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string line =
        nl == std::string::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    ++number;
    if (!line.empty()) {
      std::string why;
      auto rec = parse_record(line, &why);
      if (!rec) {
        result.diags.push_back({Severity::Error, number, "syntax_error", why});
      } else {
        records.push_back(std::move(*rec));
      }
    }
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  if (!has_errors(result.diags)) result.value = std::move(records);
  return result;
}

std::string join_set(const std::set<std::string>& items) {
  if (items.empty()) return "-";
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  if (items.empty()) return "-";
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  if (value.empty() || value == "-") return out;
  size_t pos = 0;
  while (pos <= value.size()) {
    size_t comma = value.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(value.substr(pos));
      break;
    }
    out.push_back(value.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

}  // namespace rsent
