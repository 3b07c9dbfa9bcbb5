#pragma once

#include <optional>
#include <set>
#include <string>

namespace rsent {

constexpr int kMinutesPerDay = 1440;

// A point on the simulated clock.  Days are 1-based; `minute` counts from
// midnight in [0, 1440).  All ordering/arithmetic goes through the absolute
// minute count so day boundaries never need special cases.
struct SimTime {
  int day = 1;
  int minute = 0;

  long abs() const { return static_cast<long>(day - 1) * kMinutesPerDay + minute; }

  static SimTime from_abs(long abs_minute) {
    SimTime t;
    t.day = static_cast<int>(abs_minute / kMinutesPerDay) + 1;
    t.minute = static_cast<int>(abs_minute % kMinutesPerDay);
    return t;
  }

  friend bool operator==(const SimTime& a, const SimTime& b) { return a.abs() == b.abs(); }
  friend bool operator!=(const SimTime& a, const SimTime& b) { return a.abs() != b.abs(); }
  friend bool operator<(const SimTime& a, const SimTime& b) { return a.abs() < b.abs(); }
  friend bool operator<=(const SimTime& a, const SimTime& b) { return a.abs() <= b.abs(); }
  friend bool operator>(const SimTime& a, const SimTime& b) { return a.abs() > b.abs(); }
  friend bool operator>=(const SimTime& a, const SimTime& b) { return a.abs() >= b.abs(); }
};

// "d3:07:05" — the stamp used at the front of every log record.
std::string format_sim_time(const SimTime& t);

// "HH:MM" -> minutes since midnight.  Accepts 00:00 .. 24:00; 24:00 is only
// meaningful as a window end and comes back as 1440.
std::optional<int> parse_clock(const std::string& text);

std::string format_clock(int minute_of_day);

// A daily-recurring delivery window.  Half-open: a minute m is inside when
// start <= m < end.  `end` may be 1440 (midnight); windows never wrap past
// midnight.  When `daily` is false the window only applies on the listed
// day numbers.
struct TimeWindow {
  int start = 0;
  int end = 0;
  bool daily = true;
  std::set<int> days;

  bool applies_on(int day) const { return daily || days.count(day) > 0; }

  bool contains(const SimTime& t) const {
    return applies_on(t.day) && t.minute >= start && t.minute < end;
  }
};

}  // namespace rsent
