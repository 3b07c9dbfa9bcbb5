#include <doctest.h>

#include <string>
#include <vector>

#include "core/rng.hpp"
#include "core/trace.hpp"
#include "core/world.hpp"
#include "gen.hpp"

using namespace rsent;

namespace {

struct Fixture {
  HomeMap map;
  Plan plan;
};

Fixture fixture() {
  Fixture f;
  auto m = parse_map(
      "map v1\nlocation kitchen\nlocation hall\nlocation den\ndock hall\n"
      "edge kitchen hall 1\nedge hall den 2\n");
  REQUIRE(m.ok());
  f.map = *m.value;
  auto p = parse_plan(
      "plan v1\nmember mom adult\nmember kidA child\n"
      "reminder r\n  recipients mom\n  window 08:00-09:00 daily\n  locations den\n"
      "  predicate always\n  action speak \"x\"\nend\n");
  REQUIRE(p.ok());
  f.plan = *p.value;
  return f;
}

Trace parse_good(const Fixture& f, const std::string& text) {
  auto t = parse_trace(text, f.plan, f.map);
  if (!t.ok())
    for (const auto& d : t.diags) MESSAGE(format_diagnostic(d));
  REQUIRE(t.ok());
  return *t.value;
}

std::vector<std::string> error_codes(const Fixture& f, const std::string& text) {
  auto t = parse_trace(text, f.plan, f.map);
  std::vector<std::string> codes;
  for (const auto& d : t.diags)
    if (d.severity == Severity::Error) codes.push_back(d.code);
  return codes;
}

}  // namespace

TEST_CASE("traces parse every event kind") {
  Fixture f = fixture();
  Trace t = parse_good(f,
                       "trace v1\n"
                       "# the day begins\n"
                       "d1 07:00 move mom kitchen cooking\n"
                       "d1 07:30 move kidA den homework tv\n"
                       "d1 08:00 set_objects kitchen +meds_box -dishes\n"
                       "d1 08:05 checkin mom\n"
                       "d1 08:10 privacy on 45\n"
                       "d1 08:10 privacy on rest_of_day\n"
                       "d1 08:15 privacy off\n"
                       "d1 09:00 edge hall den closed\n"
                       "d1 09:30 move mom away\n"
                       "d2 00:10 rescue\n");
  REQUIRE(t.events.size() == 10);
  CHECK(t.events[0].kind == TraceEvent::Kind::Move);
  CHECK(t.events[1].activities == std::set<std::string>{"homework", "tv"});
  REQUIRE(t.events[2].object_deltas.size() == 2);
  CHECK(t.events[2].object_deltas[0] == std::make_pair(true, std::string("meds_box")));
  CHECK(t.events[2].object_deltas[1] == std::make_pair(false, std::string("dishes")));
  CHECK(t.events[4].privacy == TraceEvent::PrivacyKind::OnForMinutes);
  CHECK(t.events[4].privacy_minutes == 45);
  CHECK(t.events[5].privacy == TraceEvent::PrivacyKind::OnRestOfDay);
  CHECK(t.events[6].privacy == TraceEvent::PrivacyKind::Off);
  CHECK(t.events[7].kind == TraceEvent::Kind::Edge);
  CHECK(!t.events[7].edge_open);
  CHECK(t.events[8].location == "away");
  CHECK(t.events[9].time.abs() == 1450);

  // Serialized text parses back to the same events.
  Trace again = parse_good(f, serialize_trace(t));
  CHECK(serialize_trace(again) == serialize_trace(t));
  REQUIRE(again.events.size() == t.events.size());
}

TEST_CASE("trace diagnostics pinpoint bad lines") {
  Fixture f = fixture();
  using V = std::vector<std::string>;
  CHECK(error_codes(f, "") == V{"syntax_error"});
  CHECK(error_codes(f, "trace v2\n") == V{"syntax_error"});
  CHECK(error_codes(f, "trace v1\nd0 08:00 checkin mom\n") == V{"bad_time"});
  CHECK(error_codes(f, "trace v1\nd1 24:00 checkin mom\n") == V{"bad_time"});
  CHECK(error_codes(f, "trace v1\nd1 08:00 move ghost kitchen\n") == V{"unknown_member"});
  CHECK(error_codes(f, "trace v1\nd1 08:00 move mom attic\n") == V{"unknown_location"});
  CHECK(error_codes(f, "trace v1\nd1 08:00 move mom kitchen Cooking\n") == V{"bad_tag"});
  CHECK(error_codes(f, "trace v1\nd1 08:00 set_objects kitchen meds_box\n") == V{"bad_tag"});
  CHECK(error_codes(f, "trace v1\nd1 08:00 edge kitchen den closed\n") == V{"unknown_edge"});
  CHECK(error_codes(f, "trace v1\nd1 08:00 privacy maybe\n") == V{"syntax_error"});
  CHECK(error_codes(f, "trace v1\nd1 09:00 checkin mom\nd1 08:00 checkin mom\n") ==
        V{"unsorted_events"});
}

TEST_CASE("the world fold tracks people, stuff, and doors") {
  Fixture f = fixture();
  Trace t = parse_good(f,
                       "trace v1\n"
                       "d1 07:00 move mom kitchen cooking\n"
                       "d1 07:10 move kidA kitchen\n"
                       "d1 07:20 set_objects den +dishes\n"
                       "d1 07:30 move mom den reading\n"
                       "d1 07:40 set_objects den -dishes +meds_box\n"
                       "d1 07:50 edge kitchen hall closed\n"
                       "d1 07:55 move kidA away\n"
                       "d1 08:00 edge kitchen hall open\n");

  WorldState w = world_at(t, SimTime{1, 425});  // 07:05
  CHECK(w.member_location("mom") == "kitchen");
  CHECK(w.member_location("kidA") == "");
  Scene kitchen = w.scene_at("kitchen");
  REQUIRE(kitchen.persons.size() == 1);
  CHECK(kitchen.persons[0].activities == std::set<std::string>{"cooking"});

  w = world_at(t, SimTime{1, 450});  // 07:30: mom moved on, activities replaced
  CHECK(w.member_location("mom") == "den");
  CHECK(w.scene_at("den").persons[0].activities == std::set<std::string>{"reading"});
  CHECK(w.scene_at("kitchen").persons.size() == 1);  // kidA still there
  CHECK(w.scene_at("den").objects == std::set<std::string>{"dishes"});

  w = world_at(t, SimTime{1, 475});  // 07:55
  CHECK(w.scene_at("den").objects == std::set<std::string>{"meds_box"});
  CHECK(w.member_location("kidA") == "");  // away again
  CHECK(w.closed_edges.count(edge_key("hall", "kitchen")) == 1);

  w = world_at(t, SimTime{1, 480});
  CHECK(w.closed_edges.empty());
}

TEST_CASE("the incremental cursor agrees with the from-scratch fold") {
  RandomStream rng(555);
  for (int i = 0; i < 60; ++i) {
    gen::InstanceOptions opt;
    opt.days = 2;
    gen::Instance inst = gen::gen_instance(rng, opt);
    REQUIRE(inst.ok);
    WorldCursor cursor(inst.trace);
    for (long abs = 0; abs < 2 * kMinutesPerDay; abs += 1 + static_cast<long>(rng.below(90))) {
      SimTime t = SimTime::from_abs(abs);
      cursor.advance_to(t);
      WorldState ref = world_at(inst.trace, t);
      CAPTURE(i);
      CAPTURE(abs);
      CHECK(cursor.state().members.size() == ref.members.size());
      for (const auto& [id, ps] : ref.members) {
        auto it = cursor.state().members.find(id);
        REQUIRE(it != cursor.state().members.end());
        CHECK(it->second.location == ps.location);
        CHECK(it->second.activities == ps.activities);
      }
      CHECK(cursor.state().objects == ref.objects);
      CHECK(cursor.state().closed_edges == ref.closed_edges);
    }
  }
}
