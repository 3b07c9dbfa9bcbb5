#include "report.hpp"

#include <algorithm>
#include <set>

#include "textutil.hpp"

namespace rsent {

Report build_report(const std::vector<LogRecord>& records,
                    const std::vector<OracleDelivery>* oracle) {
  Report rep;
  long offline_since = -1;
  long last_time = 0;
  std::set<std::pair<std::string, int>> served;  // (reminder, day) with any delivery

  for (const auto& rec : records) {
    last_time = std::max(last_time, rec.time.abs());
    rep.days = std::max(rep.days, rec.time.day);

    if (rec.kind == "delivered") {
      ++rep.deliveries;
      const auto* rid = rec.field("reminder");
      const auto* mode = rec.field("mode");
      if (!rid || !mode) continue;
      auto& pr = rep.per_reminder[*rid];
      ++pr.total;
      if (*mode == "proactive") {
        ++rep.proactive;
        ++pr.proactive;
      } else if (*mode == "seek") {
        ++rep.seek;
        ++pr.seek;
      } else if (*mode == "checkin") {
        ++rep.checkin_deliveries;
        ++pr.checkin;
      }
      served.insert({*rid, rec.time.day});
    } else if (rec.kind == "suppressed") {
      ++rep.suppressed;
      if (const auto* reason = rec.field("reason")) ++rep.suppressed_by_reason[*reason];
    } else if (rec.kind == "checkin") {
      ++rep.checkins;
    } else if (rec.kind == "help_request") {
      ++rep.help_requests;
    } else if (rec.kind == "snapshot") {
      ++rep.snapshots;
      const auto* stage2 = rec.field("stage2");
      if (stage2 && *stage2 == "yes") ++rep.snapshots_full;
    } else if (rec.kind == "offline") {
      if (offline_since < 0) offline_since = rec.time.abs();
    } else if (rec.kind == "rescue") {
      if (offline_since >= 0) {
        rep.downtime += rec.time.abs() - offline_since;
        offline_since = -1;
      }
    }
  }
  if (offline_since >= 0) rep.downtime += last_time - offline_since;

  if (oracle) {
    rep.has_missed = true;
    std::set<std::pair<std::string, int>> expected;
    for (const auto& d : *oracle)
      expected.insert({d.reminder, static_cast<int>(d.abs / kMinutesPerDay) + 1});
    for (const auto& e : expected)
      if (!served.count(e)) rep.missed_windows.push_back(e);
  }
  return rep;
}

std::string print_report(const Report& r) {
  std::string out = "report v1\n";
  auto kv = [&](const char* k, long v) { out += std::string(k) + "=" + std::to_string(v) + "\n"; };
  kv("days", r.days);
  kv("deliveries", r.deliveries);
  kv("proactive", r.proactive);
  kv("seek", r.seek);
  kv("checkin", r.checkin_deliveries);
  kv("suppressed", r.suppressed);
  for (const auto& [reason, n] : r.suppressed_by_reason)
    out += "suppressed_" + reason + "=" + std::to_string(n) + "\n";
  kv("checkins", r.checkins);
  kv("help_requests", r.help_requests);
  kv("snapshots", r.snapshots);
  kv("snapshots_full", r.snapshots_full);
  kv("downtime", r.downtime);
  if (r.has_missed) kv("missed", static_cast<long>(r.missed_windows.size()));
  for (const auto& [rid, pr] : r.per_reminder) {
    out += "reminder=" + rid + " total=" + std::to_string(pr.total) +
           " proactive=" + std::to_string(pr.proactive) + " seek=" + std::to_string(pr.seek) +
           " checkin=" + std::to_string(pr.checkin) + "\n";
  }
  for (const auto& [rid, day] : r.missed_windows)
    out += "missed_window reminder=" + rid + " day=" + std::to_string(day) + "\n";
  return out;
}

Parsed<Report> parse_report(const std::string& text) {
  Parsed<Report> result;
  Report rep;
  auto lines = split_source_lines(text);
  auto bad = [&](int line) {
    result.diags.push_back({Severity::Error, line, "syntax_error", "bad report line"});
  };
  if (lines.empty() || lines.front().text != "report v1") {
    bad(lines.empty() ? 0 : lines.front().number);
    return result;
  }
  for (size_t i = 1; i < lines.size(); ++i) {
    auto tok = split_tokens(lines[i].text);
    if (tok.size() == 5 && tok[0].rfind("reminder=", 0) == 0) {
      Report::PerReminder pr;
      std::string rid = tok[0].substr(9);
      bool ok = !rid.empty();
      for (size_t f = 1; f < 5 && ok; ++f) {
        size_t eq = tok[f].find('=');
        ok = eq != std::string::npos;
        if (!ok) break;
        auto v = parse_int(tok[f].substr(eq + 1), 0, 1000000000);
        ok = v.has_value();
        if (!ok) break;
        std::string key = tok[f].substr(0, eq);
        if (key == "total")
          pr.total = *v;
        else if (key == "proactive")
          pr.proactive = *v;
        else if (key == "seek")
          pr.seek = *v;
        else if (key == "checkin")
          pr.checkin = *v;
        else
          ok = false;
      }
      if (!ok) {
        bad(lines[i].number);
        continue;
      }
      rep.per_reminder[rid] = pr;
      continue;
    }
    if (tok.size() == 3 && tok[0] == "missed_window") {
      if (tok[1].rfind("reminder=", 0) != 0 || tok[2].rfind("day=", 0) != 0) {
        bad(lines[i].number);
        continue;
      }
      auto day = parse_int(tok[2].substr(4), 1, 100000);
      if (!day) {
        bad(lines[i].number);
        continue;
      }
      rep.missed_windows.emplace_back(tok[1].substr(9), *day);
      continue;
    }
    if (tok.size() == 1) {
      size_t eq = tok[0].find('=');
      if (eq == std::string::npos) {
        bad(lines[i].number);
        continue;
      }
      std::string key = tok[0].substr(0, eq);
      auto v = parse_int(tok[0].substr(eq + 1), 0, 1000000000);
      if (!v) {
        bad(lines[i].number);
        continue;
      }
      if (key == "days")
        rep.days = *v;
      else if (key == "deliveries")
        rep.deliveries = *v;
      else if (key == "proactive")
        rep.proactive = *v;
      else if (key == "seek")
        rep.seek = *v;
      else if (key == "checkin")
        rep.checkin_deliveries = *v;
      else if (key == "suppressed")
        rep.suppressed = *v;
      else if (key == "checkins")
        rep.checkins = *v;
      else if (key == "help_requests")
        rep.help_requests = *v;
      else if (key == "snapshots")
        rep.snapshots = *v;
      else if (key == "snapshots_full")
        rep.snapshots_full = *v;
      else if (key == "downtime")
        rep.downtime = *v;
      else if (key == "missed")
        rep.has_missed = true;  // value re-derived from missed_window lines
      else if (key.rfind("suppressed_", 0) == 0)
        rep.suppressed_by_reason[key.substr(11)] = *v;
      else {
        bad(lines[i].number);
      }
      continue;
    }
    bad(lines[i].number);
  }
  if (!has_errors(result.diags)) result.value = std::move(rep);
  return result;
}

}  // namespace rsent
