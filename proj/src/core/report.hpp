#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eventlog.hpp"
#include "oracle.hpp"

namespace rsent {

// Aggregate view of one run, derived purely from the log text.  With the
// reference deliveries supplied, also lists (reminder, day) pairs the run
// should have served but never did.
struct Report {
  int days = 0;
  long deliveries = 0;
  long proactive = 0;
  long seek = 0;
  long checkin_deliveries = 0;
  long suppressed = 0;
  std::map<std::string, long> suppressed_by_reason;
  long checkins = 0;
  long help_requests = 0;
  long snapshots = 0;
  long snapshots_full = 0;  // snapshots where the full interpretation ran
  long downtime = 0;        // minutes offline (until rescue or end of log)

  struct PerReminder {
    long total = 0, proactive = 0, seek = 0, checkin = 0;
  };
  std::map<std::string, PerReminder> per_reminder;

  bool has_missed = false;
  std::vector<std::pair<std::string, int>> missed_windows;  // (reminder, day)
};

Report build_report(const std::vector<LogRecord>& records,
                    const std::vector<OracleDelivery>* oracle);

// Stable k=v text; print (parse (print r)) == print r.
std::string print_report(const Report& r);

Parsed<Report> parse_report(const std::string& text);

}  // namespace rsent
