#pragma once

#include <map>
#include <set>
#include <string>

#include "domain.hpp"
#include "trace.hpp"

namespace rsent {

// Ground truth at one instant: where everyone is (absent = away), what they
// are doing, which objects sit in each room, and which doors are shut.
struct WorldState {
  struct PersonState {
    std::string location;  // on-map room; people who are away have no entry
    std::set<std::string> activities;
  };

  std::map<std::string, PersonState> members;
  std::map<std::string, std::set<std::string>> objects;
  std::set<std::pair<std::string, std::string>> closed_edges;  // edge_key form

  // Actual contents of one room, people sorted by id.
  Scene scene_at(const std::string& location) const;

  // Room the member is in, or empty when away.
  std::string member_location(const std::string& id) const;

  // Applies one world-side event (Move / SetObjects / Edge; others are
  // robot-side and ignored here).
  void apply(const TraceEvent& ev);
};

// State after folding every event with time <= t.  Rebuilt from scratch —
// the reference implementation the incremental cursor must agree with.
WorldState world_at(const Trace& trace, const SimTime& t);

// Incremental fold for minute-by-minute walks over a trace.
class WorldCursor {
 public:
  explicit WorldCursor(const Trace& trace) : trace_(&trace) {}

  // Folds events in (previous, t].  Times must be nondecreasing across calls.
  void advance_to(const SimTime& t);

  const WorldState& state() const { return state_; }

 private:
  const Trace* trace_;
  size_t next_ = 0;
  WorldState state_;
};

}  // namespace rsent
