#include <doctest.h>

#include <string>
#include <vector>

#include "core/report.hpp"
#include "core/sim.hpp"

using namespace rsent;

namespace {

struct Fixture {
  HomeMap map;
  Plan plan;
  Trace trace;
};

Fixture load(const std::string& map_text, const std::string& plan_text,
             const std::string& trace_text) {
  Fixture out;
  auto m = parse_map(map_text);
  REQUIRE(m.ok());
  out.map = *m.value;
  auto p = parse_plan(plan_text);
  REQUIRE(p.ok());
  out.plan = *p.value;
  auto t = parse_trace(trace_text, out.plan, out.map);
  REQUIRE(t.ok());
  out.trace = *t.value;
  return out;
}

Fixture dwell_fixture() {
  return load(
      "map v1\nlocation base\nlocation den\ndock base\nedge base den 1\n",
      "plan v1\nmember kidA child\n"
      "reminder wash\n  recipients kidA\n  window 00:10-00:30 daily\n  locations den\n"
      "  predicate present(kidA)\n  action speak \"wash up\"\n"
      "  dwell 2\n  repeat 5\n  daily_max 3\nend\n",
      "trace v1\n"
      "d1 00:12 move kidA den\n"
      "d1 00:20 move kidA away\n"
      "d1 00:25 checkin kidA\n");
}

Fixture drained_fixture(bool with_rescue) {
  std::string trace = "trace v1\n";
  if (with_rescue) trace += "d1 04:00 rescue\n";
  return load(
      "map v1\nlocation base\nlocation porch\ndock base\nedge base porch 1\n",
      "plan v1\nmember res adult\n"
      "reminder ping\n  recipients res\n  window 00:10-00:20 daily\n  locations porch\n"
      "  predicate always\n  action speak \"ping\"\nend\n",
      trace);
}

SimConfig drained_cfg() {
  SimConfig cfg;
  cfg.p_dock = 0.0;
  cfg.battery_capacity = 120;
  cfg.drain_moving = 2;
  cfg.drain_idle = 1;
  cfg.charge_rate = 4;
  return cfg;
}

}  // namespace

TEST_CASE("report tallies one run correctly") {
  Fixture fix = dwell_fixture();
  SimConfig cfg;
  cfg.mode = SimMode::Omniscient;
  EventLog log = simulate(fix.plan, fix.map, fix.trace, cfg);
  auto ds = oracle_deliveries(fix.plan, fix.trace, 1);
  Report rep = build_report(log.records, &ds);

  CHECK(rep.days == 1);
  CHECK(rep.deliveries == 3);
  CHECK(rep.proactive == 2);
  CHECK(rep.seek == 0);
  CHECK(rep.checkin_deliveries == 1);
  // Re-armed at 00:17 and 00:18 but inside the five-minute repeat gap.
  CHECK(rep.suppressed == 2);
  CHECK(rep.suppressed_by_reason.at("cooldown") == 2);
  CHECK(rep.checkins == 1);
  CHECK(rep.help_requests == 0);
  // Watched every open-window minute until the day was used up.  The third
  // delivery rides the 00:25 checkin, which lands before that minute's
  // privacy evaluation — so the watch covers 00:10 through 00:24.
  CHECK(rep.snapshots == 15);
  CHECK(rep.snapshots_full == 15);
  CHECK(rep.downtime == 0);
  REQUIRE(rep.per_reminder.count("wash") == 1);
  CHECK(rep.per_reminder.at("wash").total == 3);
  CHECK(rep.per_reminder.at("wash").proactive == 2);
  CHECK(rep.per_reminder.at("wash").seek == 0);
  CHECK(rep.per_reminder.at("wash").checkin == 1);
  CHECK(rep.has_missed);
  CHECK(rep.missed_windows.empty());
}

TEST_CASE("downtime spans offline to rescue, or to the end of the log") {
  SimConfig cfg = drained_cfg();

  Fixture rescued = drained_fixture(true);
  EventLog a = simulate(rescued.plan, rescued.map, rescued.trace, cfg);
  CHECK(build_report(a.records, nullptr).downtime == 115);  // 02:05 -> 04:00

  Fixture stranded = drained_fixture(false);
  EventLog b = simulate(stranded.plan, stranded.map, stranded.trace, cfg);
  // Offline at 02:05 with nobody coming: counts through the closing record
  // at 23:59.
  CHECK(build_report(b.records, nullptr).downtime == 1439 - 125);
}

TEST_CASE("missed windows name every (reminder, day) the run never served") {
  Fixture fix = dwell_fixture();
  auto ds = oracle_deliveries(fix.plan, fix.trace, 1);
  REQUIRE(ds.size() == 3);

  // An empty log misses the lot — but the three deliveries collapse into
  // one (reminder, day) pair.
  std::vector<LogRecord> empty;
  Report rep = build_report(empty, &ds);
  CHECK(rep.has_missed);
  REQUIRE(rep.missed_windows.size() == 1);
  CHECK(rep.missed_windows[0].first == "wash");
  CHECK(rep.missed_windows[0].second == 1);
  CHECK(print_report(rep).find("missed=1\n") != std::string::npos);
  CHECK(print_report(rep).find("missed_window reminder=wash day=1\n") != std::string::npos);

  // Without a reference there is nothing to miss and no missed= line.
  Report bare = build_report(empty, nullptr);
  CHECK(!bare.has_missed);
  CHECK(print_report(bare).find("missed") == std::string::npos);
}

TEST_CASE("report text round-trips through its parser") {
  Fixture fix = dwell_fixture();
  SimConfig cfg;
  cfg.mode = SimMode::Omniscient;
  EventLog log = simulate(fix.plan, fix.map, fix.trace, cfg);
  auto ds = oracle_deliveries(fix.plan, fix.trace, 1);

  auto roundtrip = [&](const std::vector<OracleDelivery>* oracle) {
    Report rep = build_report(log.records, oracle);
    std::string text = print_report(rep);
    CHECK(text.rfind("report v1\n", 0) == 0);
    auto parsed = parse_report(text);
    REQUIRE(parsed.ok());
    CHECK(print_report(*parsed.value) == text);
  };
  roundtrip(&ds);
  roundtrip(nullptr);

  CHECK(!parse_report("").ok());
  CHECK(!parse_report("report v2\ndays=1\n").ok());
  CHECK(!parse_report("report v1\ndays=\n").ok());
  CHECK(!parse_report("report v1\nnonsense\n").ok());
}
