// Exercises the public C interface the way an embedding application would:
// through routine_sentinel.h alone, never the C++ core underneath.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <string>

#include "routine_sentinel.h"

namespace {

struct StringFree {
  void operator()(char* s) const { rs_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringFree>;

std::string str(const OwnedString& s) { return s ? std::string(s.get()) : std::string(); }

const char* kMap =
    "map v1\nlocation base\nlocation den\ndock base\nedge base den 1\n";
const char* kPlan =
    "plan v1\nmember kidA child\n"
    "reminder wash\n  recipients kidA\n  window 00:10-00:30 daily\n  locations den\n"
    "  predicate present(kidA)\n  action speak \"wash up\"\n"
    "  dwell 2\n  repeat 5\n  daily_max 3\nend\n";
const char* kTrace =
    "trace v1\n"
    "d1 00:12 move kidA den\n"
    "d1 00:20 move kidA away\n"
    "d1 00:25 checkin kidA\n";

struct Handles {
  rs_map* map = nullptr;
  rs_plan* plan = nullptr;
  rs_trace* trace = nullptr;
  ~Handles() {
    rs_trace_free(trace);
    rs_plan_free(plan);
    rs_map_free(map);
  }
};

void load(Handles& h) {
  REQUIRE(rs_map_parse(kMap, &h.map, nullptr) == RS_OK);
  REQUIRE(rs_plan_parse(kPlan, &h.plan, nullptr) == RS_OK);
  REQUIRE(rs_trace_parse(kTrace, h.plan, h.map, &h.trace, nullptr) == RS_OK);
}

}  // namespace

TEST_CASE("full pipeline through the C interface") {
  Handles h;
  load(h);
  CHECK(rs_plan_validate(h.plan, h.map, nullptr) == RS_OK);

  rs_sim_config cfg;
  rs_sim_config_init(&cfg);
  cfg.omniscient = 1;

  char* raw_log = nullptr;
  REQUIRE(rs_simulate(h.plan, h.map, h.trace, &cfg, &raw_log) == RS_OK);
  OwnedString log(raw_log);
  CHECK(str(log).find("kind=delivered reminder=wash mode=proactive to=kidA") !=
        std::string::npos);

  char* raw_oracle = nullptr;
  REQUIRE(rs_oracle(h.plan, h.trace, 1, &raw_oracle) == RS_OK);
  OwnedString oracle(raw_oracle);
  CHECK(str(oracle) ==
        "t=d1:00:14 reminder=wash mode=proactive to=kidA\n"
        "t=d1:00:19 reminder=wash mode=proactive to=kidA\n"
        "t=d1:00:25 reminder=wash mode=checkin to=kidA\n");

  char* raw_diff = nullptr;
  REQUIRE(rs_diff(log.get(), oracle.get(), &raw_diff, nullptr) == RS_OK);
  OwnedString diff(raw_diff);
  CHECK(str(diff) == "");

  char* raw_report = nullptr;
  REQUIRE(rs_report(log.get(), oracle.get(), &raw_report, nullptr) == RS_OK);
  OwnedString report(raw_report);
  CHECK(str(report).rfind("report v1\n", 0) == 0);
  CHECK(str(report).find("deliveries=3\n") != std::string::npos);
  CHECK(str(report).find("missed=0\n") != std::string::npos);

  // Without the reference there is nothing to call missed.
  char* raw_bare = nullptr;
  REQUIRE(rs_report(log.get(), nullptr, &raw_bare, nullptr) == RS_OK);
  OwnedString bare(raw_bare);
  CHECK(str(bare).find("missed=") == std::string::npos);
}

TEST_CASE("status codes separate malformed text from bad contents from bad calls") {
  rs_map* map = nullptr;
  char* raw = nullptr;
  CHECK(rs_map_parse("what even is this", &map, &raw) == RS_E_SYNTAX);
  CHECK(map == nullptr);
  OwnedString diags(raw);
  CHECK(str(diags).find("syntax_error") != std::string::npos);

  raw = nullptr;
  CHECK(rs_map_parse("map v1\nlocation den\nlocation den\ndock den\n", &map, &raw) ==
        RS_E_VALIDATION);
  CHECK(map == nullptr);
  OwnedString dup(raw);
  CHECK(str(dup).find("duplicate_location") != std::string::npos);

  rs_plan* plan = nullptr;
  CHECK(rs_plan_parse("plan v1\nmember mom wizard\n", &plan, nullptr) == RS_E_VALIDATION);
  CHECK(plan == nullptr);
  // A block cut off mid-file is a grammar problem even though it also
  // reports the fields never seen.
  CHECK(rs_plan_parse("plan v1\nmember mom adult\nreminder r\n  recipients mom\n", &plan,
                      nullptr) == RS_E_SYNTAX);
  CHECK(plan == nullptr);

  // Semantically broken cross-references surface at validation.
  Handles h;
  REQUIRE(rs_map_parse(kMap, &h.map, nullptr) == RS_OK);
  REQUIRE(rs_plan_parse(
              "plan v1\nmember mom adult\n"
              "reminder r\n  recipients mom\n  window 08:00-09:00 daily\n"
              "  locations attic\n  predicate always\n  action speak \"x\"\nend\n",
              &h.plan, nullptr) == RS_OK);
  raw = nullptr;
  CHECK(rs_plan_validate(h.plan, h.map, &raw) == RS_E_VALIDATION);
  OwnedString vdiags(raw);
  CHECK(str(vdiags).find("unknown_location") != std::string::npos);

  rs_trace* trace = nullptr;
  CHECK(rs_trace_parse("trace v1\nd1 00:10 move mom den\nd1 00:05 checkin mom\n", h.plan,
                       h.map, &trace, nullptr) == RS_E_VALIDATION);
  CHECK(trace == nullptr);

  CHECK(rs_map_parse(nullptr, &map, nullptr) == RS_E_ARGUMENT);
  CHECK(rs_map_parse(kMap, nullptr, nullptr) == RS_E_ARGUMENT);
}

TEST_CASE("warnings alone do not fail a parse") {
  // Two islands: legal, but worth flagging.
  rs_map* map = nullptr;
  char* raw = nullptr;
  REQUIRE(rs_map_parse(
              "map v1\nlocation a\nlocation b\nlocation c\ndock a\nedge a b 1\n", &map,
              &raw) == RS_OK);
  OwnedString diags(raw);
  CHECK(str(diags).find("disconnected") != std::string::npos);
  rs_map_free(map);
}

TEST_CASE("config defaults and argument screening") {
  rs_sim_config cfg;
  rs_sim_config_init(&cfg);
  CHECK(cfg.seed == 0);
  CHECK(cfg.days == 1);
  CHECK(cfg.omniscient == 0);
  CHECK(cfg.p_person_swap == 0.0);
  CHECK(cfg.p_activity_fp == 0.0);
  CHECK(cfg.p_activity_fn == 0.0);
  CHECK(cfg.p_object_flip == 0.0);
  CHECK(cfg.p_dock == 1.0);
  CHECK(cfg.battery_capacity == 240);
  CHECK(cfg.drain_moving == 2);
  CHECK(cfg.drain_idle == 1);
  CHECK(cfg.charge_rate == 4);
  CHECK(cfg.max_gap == 5);
  CHECK(cfg.seek_timeout == 10);
  CHECK(cfg.privacy_lead == 15);

  Handles h;
  load(h);
  char* raw = nullptr;
  CHECK(rs_simulate(h.plan, h.map, h.trace, nullptr, &raw) == RS_E_ARGUMENT);
  rs_sim_config bad = cfg;
  bad.days = 0;
  CHECK(rs_simulate(h.plan, h.map, h.trace, &bad, &raw) == RS_E_ARGUMENT);
  bad = cfg;
  bad.p_object_flip = 1.5;
  CHECK(rs_simulate(h.plan, h.map, h.trace, &bad, &raw) == RS_E_ARGUMENT);
  bad = cfg;
  bad.seek_timeout = 0;
  CHECK(rs_simulate(h.plan, h.map, h.trace, &bad, &raw) == RS_E_ARGUMENT);
  CHECK(rs_oracle(h.plan, h.trace, 0, &raw) == RS_E_ARGUMENT);
}

TEST_CASE("identical inputs give identical logs across the boundary") {
  Handles h;
  load(h);
  rs_sim_config cfg;
  rs_sim_config_init(&cfg);
  cfg.seed = 909;
  cfg.p_person_swap = 0.2;
  cfg.p_activity_fp = 0.1;
  cfg.p_activity_fn = 0.1;
  cfg.p_object_flip = 0.2;
  cfg.p_dock = 0.6;
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(rs_simulate(h.plan, h.map, h.trace, &cfg, &a) == RS_OK);
  REQUIRE(rs_simulate(h.plan, h.map, h.trace, &cfg, &b) == RS_OK);
  OwnedString sa(a), sb(b);
  CHECK(str(sa) == str(sb));
  CHECK(!str(sa).empty());
}

TEST_CASE("plan text round-trips through serialize") {
  Handles h;
  load(h);
  char* raw1 = nullptr;
  REQUIRE(rs_plan_serialize(h.plan, &raw1) == RS_OK);
  OwnedString first(raw1);

  rs_plan* again = nullptr;
  REQUIRE(rs_plan_parse(first.get(), &again, nullptr) == RS_OK);
  char* raw2 = nullptr;
  REQUIRE(rs_plan_serialize(again, &raw2) == RS_OK);
  OwnedString second(raw2);
  rs_plan_free(again);

  CHECK(str(first) == str(second));
}

TEST_CASE("diff reports disagreements but still returns ok") {
  Handles h;
  load(h);
  rs_sim_config cfg;
  rs_sim_config_init(&cfg);
  cfg.omniscient = 1;
  char* raw_log = nullptr;
  REQUIRE(rs_simulate(h.plan, h.map, h.trace, &cfg, &raw_log) == RS_OK);
  OwnedString log(raw_log);
  char* raw_oracle = nullptr;
  REQUIRE(rs_oracle(h.plan, h.trace, 1, &raw_oracle) == RS_OK);
  OwnedString oracle(raw_oracle);

  // Drop the log's delivered lines: everything the reference wants goes
  // missing, and the call itself still succeeds.
  std::string gutted;
  std::string full = str(log);
  size_t pos = 0;
  while (pos < full.size()) {
    size_t nl = full.find('\n', pos);
    std::string line = full.substr(pos, nl - pos);
    if (line.find("kind=delivered") == std::string::npos) gutted += line + "\n";
    pos = nl + 1;
  }
  char* raw_diff = nullptr;
  REQUIRE(rs_diff(gutted.c_str(), oracle.get(), &raw_diff, nullptr) == RS_OK);
  OwnedString diff(raw_diff);
  CHECK(str(diff).find("missing: ") != std::string::npos);
  CHECK(str(diff).find("extra: ") == std::string::npos);

  // Malformed log text is a grammar failure, not a mismatch.
  char* raw_bad = nullptr;
  CHECK(rs_diff("not a log\n", oracle.get(), &raw_bad, nullptr) == RS_E_SYNTAX);
}
