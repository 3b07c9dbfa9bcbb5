#include <doctest.h>

#include "core/simtime.hpp"

using namespace rsent;

TEST_CASE("clock parsing accepts the full day and the 24:00 sentinel") {
  CHECK(parse_clock("00:00") == 0);
  CHECK(parse_clock("08:30") == 510);
  CHECK(parse_clock("23:59") == 1439);
  CHECK(parse_clock("24:00") == 1440);
}

TEST_CASE("clock parsing rejects malformed or out-of-range stamps") {
  for (const char* bad : {"24:01", "25:00", "12:60", "7:30", "07:3", "0730", "07-30", "",
                          "ab:cd", "-1:00", "07:30x"}) {
    CAPTURE(bad);
    CHECK(!parse_clock(bad).has_value());
  }
}

TEST_CASE("clock formatting round-trips every minute of the day") {
  for (int m = 0; m <= 1440; ++m) {
    auto back = parse_clock(format_clock(m));
    REQUIRE(back.has_value());
    CHECK(*back == m);
  }
}

TEST_CASE("absolute minutes map to day/minute pairs and back") {
  CHECK(SimTime{1, 0}.abs() == 0);
  CHECK(SimTime{1, 1439}.abs() == 1439);
  CHECK(SimTime{2, 0}.abs() == 1440);
  CHECK(SimTime{3, 125}.abs() == 3005);
  for (long abs : {0L, 1L, 1439L, 1440L, 2879L, 10000L}) {
    CHECK(SimTime::from_abs(abs).abs() == abs);
  }
  CHECK(format_sim_time(SimTime{1, 1085}) == "d1:18:05");
  CHECK(format_sim_time(SimTime::from_abs(1440)) == "d2:00:00");
}

TEST_CASE("windows are half-open and never wrap midnight") {
  TimeWindow w;
  w.start = 510;  // 08:30
  w.end = 630;    // 10:30
  CHECK(!w.contains(SimTime{1, 509}));
  CHECK(w.contains(SimTime{1, 510}));
  CHECK(w.contains(SimTime{1, 629}));
  CHECK(!w.contains(SimTime{1, 630}));

  TimeWindow tail;
  tail.start = 1380;
  tail.end = 1440;  // "24:00": open through the last minute of the day
  CHECK(tail.contains(SimTime{1, 1439}));
  CHECK(tail.contains(SimTime{2, 1400}));  // daily: next day's tail too
  CHECK(!tail.contains(SimTime{2, 0}));    // midnight is the next day, outside
}

TEST_CASE("day-list windows apply only on their days") {
  TimeWindow w;
  w.start = 0;
  w.end = 60;
  w.daily = false;
  w.days = {2, 4};
  CHECK(!w.applies_on(1));
  CHECK(w.applies_on(2));
  CHECK(!w.applies_on(3));
  CHECK(w.applies_on(4));
  CHECK(!w.contains(SimTime{1, 30}));
  CHECK(w.contains(SimTime{2, 30}));
}
