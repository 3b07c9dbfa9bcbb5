#include "world.hpp"

namespace rsent {

Scene WorldState::scene_at(const std::string& location) const {
  Scene s;
  s.location = location;
  for (const auto& [id, ps] : members)
    if (ps.location == location) s.persons.push_back({id, ps.activities});
  // members map is id-ordered, so persons come out sorted already
  auto it = objects.find(location);
  if (it != objects.end()) s.objects = it->second;
  return s;
}

std::string WorldState::member_location(const std::string& id) const {
  auto it = members.find(id);
  return it == members.end() ? std::string() : it->second.location;
}

void WorldState::apply(const TraceEvent& ev) {
  switch (ev.kind) {
    case TraceEvent::Kind::Move:
      if (ev.location == "away") {
        members.erase(ev.member);
      } else {
        members[ev.member] = {ev.location, ev.activities};
      }
      break;
    case TraceEvent::Kind::SetObjects: {
      auto& room = objects[ev.location];
      for (const auto& [add, tag] : ev.object_deltas) {
        if (add)
          room.insert(tag);
        else
          room.erase(tag);
      }
      break;
    }
    case TraceEvent::Kind::Edge: {
      auto key = edge_key(ev.edge_a, ev.edge_b);
      if (ev.edge_open)
        closed_edges.erase(key);
      else
        closed_edges.insert(key);
      break;
    }
    default:
      break;  // robot-side events do not change the household
  }
}

WorldState world_at(const Trace& trace, const SimTime& t) {
  WorldState w;
  for (const auto& ev : trace.events) {
    if (ev.time > t) break;
    w.apply(ev);
  }
  return w;
}

void WorldCursor::advance_to(const SimTime& t) {
  while (next_ < trace_->events.size() && trace_->events[next_].time <= t)
    state_.apply(trace_->events[next_++]);
}

}  // namespace rsent
