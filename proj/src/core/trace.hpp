#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diagnostics.hpp"
#include "homemap.hpp"
#include "plan.hpp"
#include "simtime.hpp"

namespace rsent {

// Scripted household activity.  A trace is the world's side of a run: who
// moves where and does what, plus the interactions people initiate with the
// robot (check-ins, privacy requests, rescues) and door state changes.
struct TraceEvent {
  enum class Kind { Move, SetObjects, Checkin, Privacy, Edge, Rescue };
  enum class PrivacyKind { OnForMinutes, OnRestOfDay, Off };

  Kind kind = Kind::Move;
  SimTime time;
  int line = 0;

  std::string member;                   // Move / Checkin
  std::string location;                 // Move ("away" = out of the home) / SetObjects
  std::set<std::string> activities;     // Move
  std::vector<std::pair<bool, std::string>> object_deltas;  // SetObjects: (add?, tag)
  PrivacyKind privacy = PrivacyKind::Off;
  int privacy_minutes = 0;              // Privacy OnForMinutes
  std::string edge_a, edge_b;           // Edge
  bool edge_open = true;
};

struct Trace {
  std::vector<TraceEvent> events;  // nondecreasing in time
};

// Text format, one event per line, times nondecreasing:
//   trace v1
//   d1 08:05 move kidA kitchen breakfast
//   d1 08:30 move momA away
//   d1 09:00 set_objects kitchen +dishes -lunchbox
//   d1 18:00 edge hall kitchen closed
//   d1 19:00 checkin momA
//   d1 21:00 privacy on 45          (also: privacy on rest_of_day / privacy off)
//   d2 07:00 rescue
// Members, rooms, and edges are checked against the plan's roster and map.
Parsed<Trace> parse_trace(const std::string& text, const Plan& plan, const HomeMap& map);

std::string serialize_trace(const Trace& t);

}  // namespace rsent
