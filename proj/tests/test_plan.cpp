#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "core/plan.hpp"
#include "core/rng.hpp"
#include "gen.hpp"

using namespace rsent;

namespace {

const char* kGoodPlan =
    "plan v1\n"
    "# family of three\n"
    "map house.map\n"
    "member mom adult\n"
    "member kidA child\n"
    "member kidB child\n"
    "\n"
    "reminder homework\n"
    "  recipients kidA kidB\n"
    "  window 18:00-21:00 daily\n"
    "  locations den\n"
    "  predicate all(doing(kidA, homework), doing(kidB, homework))\n"
    "  action speak \"Split up, you two.\"\n"
    "  dwell 5\n"
    "  repeat 45\n"
    "  daily_max 2\n"
    "end\n"
    "\n"
    "reminder meds\n"
    "  recipients mom\n"
    "  window 08:00-09:00 days 1 3\n"
    "  locations kitchen hall\n"
    "  predicate object(meds_box)\n"
    "  action seek_then_speak mom \"Pills say \\\"take me\\\".\"\n"
    "end\n";

Plan parse_good(const std::string& text) {
  auto p = parse_plan(text);
  if (!p.ok()) {
    for (const auto& d : p.diags) MESSAGE(format_diagnostic(d));
  }
  REQUIRE(p.ok());
  return *p.value;
}

std::vector<std::string> parse_error_codes(const std::string& text) {
  auto p = parse_plan(text);
  std::vector<std::string> codes;
  for (const auto& d : p.diags)
    if (d.severity == Severity::Error) codes.push_back(d.code);
  return codes;
}

HomeMap tiny_map() {
  auto m = parse_map(
      "map v1\nlocation kitchen\nlocation hall\nlocation den\ndock hall\n"
      "edge kitchen hall 1\nedge hall den 1\n");
  REQUIRE(m.ok());
  return *m.value;
}

std::string wrap_reminder(const std::string& fields) {
  return "plan v1\nmember mom adult\nreminder r\n" + fields + "end\n";
}

}  // namespace

TEST_CASE("a full plan parses with fields and defaults in place") {
  Plan p = parse_good(kGoodPlan);
  CHECK(p.map_ref == "house.map");
  REQUIRE(p.roster.size() == 3);
  CHECK(p.roster[0].role == Role::Adult);
  REQUIRE(p.reminders.size() == 2);

  const ReminderSpec& hw = p.reminders[0];
  CHECK(hw.recipients == std::vector<std::string>{"kidA", "kidB"});
  CHECK(hw.window.start == 1080);
  CHECK(hw.window.end == 1260);
  CHECK(hw.window.daily);
  CHECK(hw.dwell_min == 5);
  CHECK(hw.repeat_min == 45);
  CHECK(hw.daily_max == 2);

  const ReminderSpec& meds = p.reminders[1];
  CHECK(!meds.window.daily);
  CHECK(meds.window.days == std::set<int>{1, 3});
  CHECK(meds.locations == std::vector<std::string>{"kitchen", "hall"});
  CHECK(meds.action.kind == ActionKind::SeekThenSpeak);
  CHECK(meds.action.seek_target == "mom");
  CHECK(meds.action.text == "Pills say \"take me\".");
  // Pacing defaults.
  CHECK(meds.dwell_min == 0);
  CHECK(meds.repeat_min == 60);
  CHECK(meds.daily_max == 1);
}

TEST_CASE("recipients all expands to the sorted roster") {
  Plan p = parse_good(
      "plan v1\nmember zoe adult\nmember abe child\n"
      "reminder r\n  recipients all\n  window 00:00-24:00 daily\n  locations den\n"
      "  predicate always\n  action speak \"hi\"\nend\n");
  REQUIRE(p.reminders.size() == 1);
  CHECK(p.reminders[0].recipients_all);
  CHECK(p.resolved_recipients(p.reminders[0]) == std::vector<std::string>{"abe", "zoe"});
  CHECK(p.is_recipient(p.reminders[0], "zoe"));
  CHECK(!p.is_recipient(p.reminders[0], "nobody"));
}

TEST_CASE("plan parsing reports the specific field at fault") {
  using V = std::vector<std::string>;
  CHECK(parse_error_codes("") == V{"syntax_error"});
  CHECK(parse_error_codes("map v1\n") == V{"syntax_error"});
  CHECK(parse_error_codes("plan v1\nmember mom wizard\n") == V{"bad_role"});
  CHECK(parse_error_codes(wrap_reminder("  recipients mom\n  window 9-10 daily\n"
                                        "  locations den\n  predicate always\n"
                                        "  action speak \"x\"\n")) == V{"bad_window"});
  CHECK(parse_error_codes(wrap_reminder("  recipients mom\n  window 08:00-09:00 daily\n"
                                        "  locations den\n  predicate always\n"
                                        "  action shout \"x\"\n")) == V{"bad_action"});
  CHECK(parse_error_codes(wrap_reminder("  recipients mom\n  window 08:00-09:00 daily\n"
                                        "  locations den\n  predicate always\n"
                                        "  action speak \"x\"\n  dwell -1\n")) ==
        V{"bad_dwell"});
  CHECK(parse_error_codes(wrap_reminder("  recipients mom\n  window 08:00-09:00 daily\n"
                                        "  locations den\n  predicate always\n"
                                        "  action speak \"x\"\n  repeat 0\n")) ==
        V{"bad_repeat"});
  CHECK(parse_error_codes(wrap_reminder("  recipients mom\n  window 08:00-09:00 daily\n"
                                        "  locations den\n  predicate always\n"
                                        "  action speak \"x\"\n  daily_max 0\n")) ==
        V{"bad_daily_max"});
  // Omitting a required field is caught at the block end.
  auto codes = parse_error_codes(wrap_reminder("  recipients mom\n  locations den\n"
                                               "  predicate always\n  action speak \"x\"\n"));
  CHECK(codes == V{"missing_field"});
  // An unterminated block reports everything still owed, then the missing
  // 'end' itself.
  CHECK(parse_error_codes("plan v1\nmember mom adult\nreminder r\n  recipients mom\n") ==
        V{"missing_field", "missing_field", "missing_field", "missing_field", "syntax_error"});
}

TEST_CASE("cross-checks catch identity and geometry mistakes") {
  HomeMap map = tiny_map();
  auto check_codes = [&](const std::string& text, std::vector<std::string> expect) {
    auto p = parse_plan(text);
    REQUIRE(p.ok());
    std::vector<Diagnostic> diags;
    validate_plan(*p.value, map, diags);
    std::vector<std::string> codes;
    for (const auto& d : diags)
      if (d.severity == Severity::Error) codes.push_back(d.code);
    CHECK(codes == expect);
  };

  check_codes(
      "plan v1\nmember mom adult\nmember mom child\n"
      "reminder r\n  recipients mom\n  window 08:00-09:00 daily\n  locations den\n"
      "  predicate always\n  action speak \"x\"\nend\n",
      {"duplicate_member"});
  check_codes(
      "plan v1\nmember mom adult\n"
      "reminder r\n  recipients mom\n  window 08:00-09:00 daily\n  locations den\n"
      "  predicate always\n  action speak \"x\"\nend\n"
      "reminder r\n  recipients mom\n  window 10:00-11:00 daily\n  locations den\n"
      "  predicate always\n  action speak \"y\"\nend\n",
      {"duplicate_reminder"});
  check_codes(
      "plan v1\nmember mom adult\n"
      "reminder r\n  recipients dad\n  window 08:00-09:00 daily\n  locations den\n"
      "  predicate always\n  action speak \"x\"\nend\n",
      {"unknown_member"});
  check_codes(
      "plan v1\nmember mom adult\n"
      "reminder r\n  recipients mom\n  window 08:00-09:00 daily\n  locations den\n"
      "  predicate present(dad)\n  action speak \"x\"\nend\n",
      {"unknown_member"});
  check_codes(
      "plan v1\nmember mom adult\n"
      "reminder r\n  recipients mom\n  window 08:00-09:00 daily\n  locations attic\n"
      "  predicate always\n  action speak \"x\"\nend\n",
      {"unknown_location"});
  check_codes(
      "plan v1\nmember mom adult\n"
      "reminder r\n  recipients mom\n  window 08:00-09:00 daily\n  locations den den\n"
      "  predicate always\n  action speak \"x\"\nend\n",
      {"duplicate_location"});
  check_codes(
      "plan v1\nmember mom adult\n"
      "reminder r\n  recipients mom\n  window 08:00-08:10 daily\n  locations den\n"
      "  predicate always\n  action speak \"x\"\n  dwell 10\nend\n",
      {"dwell_too_long"});
  check_codes(
      "plan v1\nmember mom adult\nmember dad adult\n"
      "reminder r\n  recipients mom\n  window 08:00-09:00 daily\n  locations den\n"
      "  predicate always\n  action seek_then_speak ghost \"x\"\nend\n",
      {"unknown_member"});
  // Well-formed times, impossible range.
  check_codes(
      "plan v1\nmember mom adult\n"
      "reminder r\n  recipients mom\n  window 10:00-09:00 daily\n  locations den\n"
      "  predicate always\n  action speak \"x\"\nend\n",
      {"bad_window"});
  check_codes(
      "plan v1\nmember mom adult\n"
      "reminder r\n  recipients mom\n  window 10:00-10:00 daily\n  locations den\n"
      "  predicate always\n  action speak \"x\"\nend\n",
      {"bad_window"});
}

TEST_CASE("a speak reminder watching only other people draws a lint warning") {
  HomeMap map = tiny_map();
  auto p = parse_plan(
      "plan v1\nmember mom adult\nmember kidA child\n"
      "reminder r\n  recipients mom\n  window 08:00-09:00 daily\n  locations den\n"
      "  predicate doing(kidA, homework)\n  action speak \"x\"\nend\n");
  REQUIRE(p.ok());
  std::vector<Diagnostic> diags;
  validate_plan(*p.value, map, diags);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Severity::Warning);
  CHECK(diags[0].code == "recipient_predicate_disjoint");
}

TEST_CASE("serialize then parse reproduces the plan exactly") {
  Plan p = parse_good(kGoodPlan);
  std::string canon = serialize_plan(p);
  Plan q = parse_good(canon);
  CHECK(plans_equal(p, q));
  CHECK(serialize_plan(q) == canon);

  RandomStream rng(2024);
  for (int i = 0; i < 200; ++i) {
    std::string map_text = gen::gen_map_text(rng, 2 + static_cast<int>(rng.below(5)));
    auto map = parse_map(map_text);
    REQUIRE(map.ok());
    gen::PlanOptions opt;
    opt.days = 2;
    std::string text = gen::gen_plan_text(rng, *map.value, opt);
    CAPTURE(text);
    Plan a = parse_good(text);
    Plan b = parse_good(serialize_plan(a));
    CHECK(plans_equal(a, b));
    CHECK(serialize_plan(a) == serialize_plan(b));
  }
}
