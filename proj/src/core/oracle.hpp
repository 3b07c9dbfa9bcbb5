#pragma once

#include <string>
#include <vector>

#include "eventlog.hpp"
#include "plan.hpp"
#include "trace.hpp"

namespace rsent {

// One delivery the reference computation says must happen.
struct OracleDelivery {
  long abs = 0;  // absolute minute
  std::string reminder;
  std::string mode;  // proactive | checkin
  std::vector<std::string> recipients;  // sorted
};

struct OracleParams {
  int max_gap = 5;
  int privacy_lead = 15;
};

// Straight-line reference: for every minute of the run, fold the household
// state, settle privacy, evaluate every watched room with perfect sight, and
// apply the delivery rules (dwell streaks, pacing, recipients-present,
// person-fetching resolved instantly).  Deliberately written as one flat
// loop with its own bookkeeping — it shares the plan/trace data types and
// the predicate evaluator with the production path, and nothing else.
std::vector<OracleDelivery> oracle_deliveries(const Plan& plan, const Trace& trace, int days,
                                              const OracleParams& params = {});

// Canonical one-line-per-delivery text form (sorted by time, then reminder).
std::string format_oracle(const std::vector<OracleDelivery>& ds);

Parsed<std::vector<OracleDelivery>> parse_oracle(const std::string& text);

// Compares a simulation log against the reference deliveries.  Seek-mode
// deliveries count as proactive: the reference does not model motion, so
// fetching a person and telling them directly are the same delivery to it.
struct DeliveryDiff {
  std::vector<std::string> missing;  // reference has it, the log does not
  std::vector<std::string> extra;    // the log has it, the reference does not

  bool empty() const { return missing.empty() && extra.empty(); }
};

DeliveryDiff diff_deliveries(const std::vector<LogRecord>& log,
                             const std::vector<OracleDelivery>& oracle);

}  // namespace rsent
