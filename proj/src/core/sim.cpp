#include "sim.hpp"

#include <algorithm>
#include <functional>

#include "navigate.hpp"
#include "rng.hpp"
#include "world.hpp"

namespace rsent {

namespace {

// In-flight route of the robot body.
struct Travel {
  std::vector<std::string> hops;
  size_t at = 0;        // index of the node most recently reached
  int seg_left = 0;     // minutes left on the edge hops[at] -> hops[at+1]
  std::string target;
};

std::string scene_field(const Scene& s) {
  std::string out;
  for (const auto& p : s.persons) {
    if (!out.empty()) out += ';';
    out += p.id;
    if (!p.activities.empty()) {
      out += ':';
      bool first = true;
      for (const auto& a : p.activities) {
        if (!first) out += ',';
        out += a;
        first = false;
      }
    }
  }
  return out;
}

int edge_minutes(const HomeMap& map, const std::string& a, const std::string& b) {
  for (const auto& e : map.edges)
    if (edge_key(e.a, e.b) == edge_key(a, b)) return e.minutes;
  return 1;  // unreachable: hops always follow real edges
}

}  // namespace

EventLog simulate(const Plan& plan, const HomeMap& map, const Trace& trace, const SimConfig& cfg) {
  const bool omniscient = cfg.mode == SimMode::Omniscient;

  RandomStream rng(cfg.seed);
  WorldCursor cursor(trace);
  EventLog log;

  EngineParams ep;
  ep.max_gap = cfg.max_gap;
  ep.seek_timeout = cfg.seek_timeout;
  ep.privacy_lead = cfg.privacy_lead;
  ep.omniscient = omniscient;
  Engine engine(plan, map, ep);

  const ErrorModel em = omniscient ? ErrorModel{} : cfg.error;
  ReferencedTags referenced{plan.referenced_activity_tags(), plan.referenced_object_tags()};

  // Robot body.
  std::string position = map.dock;
  bool docked = true;
  bool offline = false;
  int battery = cfg.battery_capacity;
  std::optional<Travel> travel;
  bool moved_this_tick = false;
  long last_dock_attempt = -1;

  SimTime now{1, 0};

  auto emit = [&](const std::vector<LogRecord>& recs) {
    for (const auto& r : recs) log.add(r);
  };
  auto body_log = [&](std::string kind, std::vector<std::pair<std::string, std::string>> fields) {
    LogRecord rec;
    rec.time = now;
    rec.kind = std::move(kind);
    rec.fields = std::move(fields);
    log.add(std::move(rec));
  };
  auto battery_state = [&]() -> std::string {
    if (offline) return "offline";
    return docked ? "docked" : "undocked";
  };

  // Conditions worth checking in a room right now: every open-window
  // reminder watching it, in id order.
  auto room_query = [&](const std::string& loc) {
    std::vector<const ReminderSpec*> open;
    for (const auto& r : plan.reminders) {
      if (!r.window.contains(now)) continue;
      if (std::find(r.locations.begin(), r.locations.end(), loc) != r.locations.end())
        open.push_back(&r);
    }
    std::sort(open.begin(), open.end(),
              [](const ReminderSpec* a, const ReminderSpec* b) { return a->id < b->id; });
    std::vector<PredicatePtr> preds;
    for (const auto* r : open) preds.push_back(r->predicate);
    return make_query(preds, engine.seeking());
  };

  // Command execution and event dispatch call into each other: a command can
  // complete instantly (snapshot, teleport) and its result event can make
  // the engine issue the next command.
  std::function<void(const std::vector<Command>&)> exec;
  auto dispatch = [&](const EngineEvent& ev) {
    Engine::Result res = engine.handle_event(ev);
    emit(res.logs);
    exec(res.commands);
  };

  auto take_snapshot_here = [&](const std::string& loc) {
    Scene ground = cursor.state().scene_at(loc);
    SnapshotRecord snap =
        take_snapshot(ground, now, room_query(loc), em, plan.roster, referenced, rng, omniscient);
    body_log("snapshot", {{"loc", loc},
                          {"persons", std::to_string(snap.stage1.person_count)},
                          {"stage2", snap.stage2_ran ? "yes" : "no"},
                          {"scene", snap.stage2_ran ? scene_field(snap.perceived) : ""},
                          {"objs", snap.stage2_ran ? join_set(snap.perceived.objects) : ""}});
    EngineEvent ev;
    ev.kind = EngineEvent::Kind::SnapshotResult;
    ev.time = now;
    ev.snapshot = std::move(snap);
    dispatch(ev);
  };

  auto begin_travel = [&](const std::string& target) {
    auto route = navigate(map, position, target, cursor.state().closed_edges);
    if (!route) {
      body_log("nav_failed", {{"target", target}, {"reason", "unreachable"}});
      EngineEvent ev;
      ev.kind = EngineEvent::Kind::NavFailed;
      ev.time = now;
      ev.location = target;
      ev.reason = "unreachable";
      dispatch(ev);
      return;
    }
    if (route->minutes == 0) {
      EngineEvent ev;
      ev.kind = EngineEvent::Kind::Arrived;
      ev.time = now;
      ev.location = target;
      dispatch(ev);
      return;
    }
    if (docked) {
      docked = false;
      body_log("battery", {{"level", std::to_string(battery)}, {"state", "undocked"}});
    }
    Travel tr;
    tr.hops = route->hops;
    tr.at = 0;
    tr.seg_left = edge_minutes(map, tr.hops[0], tr.hops[1]);
    tr.target = target;
    travel = std::move(tr);
    moved_this_tick = true;
    body_log("move_start",
             {{"from", position}, {"to", target}, {"eta", std::to_string(route->minutes)}});
  };

  exec = [&](const std::vector<Command>& commands) {
    for (const auto& cmd : commands) {
      switch (cmd.kind) {
        case Command::Kind::Goto:
          if (omniscient) {
            position = cmd.location;
            body_log("arrive", {{"loc", position}});
            EngineEvent ev;
            ev.kind = EngineEvent::Kind::Arrived;
            ev.time = now;
            ev.location = position;
            dispatch(ev);
          } else {
            begin_travel(cmd.location);
          }
          break;
        case Command::Kind::TakeSnapshot:
          take_snapshot_here(position);
          break;
        case Command::Kind::Dock:
          if (position == map.dock) {
            if (last_dock_attempt == now.abs()) break;  // one attempt per tick
            last_dock_attempt = now.abs();
            bool ok = omniscient ? true : rng.bernoulli(cfg.p_dock);
            body_log("dock_attempt", {{"result", ok ? "ok" : "fail"}});
            if (ok) {
              docked = true;
              body_log("battery", {{"level", std::to_string(battery)}, {"state", "docked"}});
            }
            EngineEvent ev;
            ev.kind = EngineEvent::Kind::DockResult;
            ev.time = now;
            ev.ok = ok;
            dispatch(ev);
          } else {
            begin_travel(map.dock);
          }
          break;
        case Command::Kind::Speak:
        case Command::Kind::Idle:
          break;  // no body-side effect
      }
    }
  };

  const long horizon = static_cast<long>(cfg.days) * kMinutesPerDay;
  size_t next_trace = 0;

  for (long abs = 0; abs < horizon; ++abs) {
    now = SimTime::from_abs(abs);
    moved_this_tick = false;

    // 1. The household acts.
    cursor.advance_to(now);

    // 2. People interacting with the robot.  A dead robot takes no input;
    //    only carrying it back to the dock (rescue) works.
    while (next_trace < trace.events.size() && trace.events[next_trace].time.abs() <= abs) {
      const TraceEvent& tev = trace.events[next_trace++];
      if (tev.time.abs() < abs) continue;  // world-only event already folded
      switch (tev.kind) {
        case TraceEvent::Kind::Rescue:
          if (offline) {
            offline = false;
            position = map.dock;
            docked = true;
            travel.reset();
            engine.handle_rescue(now);
            body_log("rescue", {{"loc", position}});
            body_log("battery", {{"level", std::to_string(battery)}, {"state", "docked"}});
          }
          break;
        case TraceEvent::Kind::Checkin:
          if (!offline) {
            EngineEvent ev;
            ev.kind = EngineEvent::Kind::Checkin;
            ev.time = now;
            ev.member = tev.member;
            dispatch(ev);
          }
          break;
        case TraceEvent::Kind::Privacy:
          if (!offline) {
            EngineEvent ev;
            ev.kind = EngineEvent::Kind::PrivacyRequest;
            ev.time = now;
            ev.privacy = tev.privacy == TraceEvent::PrivacyKind::Off
                             ? EngineEvent::PrivacyReq::Off
                             : (tev.privacy == TraceEvent::PrivacyKind::OnRestOfDay
                                    ? EngineEvent::PrivacyReq::OnRestOfDay
                                    : EngineEvent::PrivacyReq::OnForMinutes);
            ev.privacy_minutes = tev.privacy_minutes;
            dispatch(ev);
          }
          break;
        default:
          break;  // household-side event, handled by the world cursor
      }
    }

    if (offline) continue;  // engine is frozen until someone rescues the robot

    // 3. Minute prologue: privacy transitions happen before any sensing.
    emit(engine.begin_minute(now));

    // 4. Motion progress.
    if (travel) {
      moved_this_tick = true;
      if (--travel->seg_left == 0) {
        ++travel->at;
        position = travel->hops[travel->at];
        if (travel->at + 1 == travel->hops.size()) {
          travel.reset();
          body_log("arrive", {{"loc", position}});
          EngineEvent ev;
          ev.kind = EngineEvent::Kind::Arrived;
          ev.time = now;
          ev.location = position;
          dispatch(ev);
        } else if (cursor.state().closed_edges.count(
                       edge_key(travel->hops[travel->at], travel->hops[travel->at + 1]))) {
          // The next door closed while under way: stop here, ask for help.
          std::string target = travel->target;
          travel.reset();
          EngineEvent sync;
          sync.kind = EngineEvent::Kind::Arrived;
          sync.time = now;
          sync.location = position;
          dispatch(sync);
          body_log("nav_failed", {{"target", target}, {"reason", "blocked"}});
          EngineEvent ev;
          ev.kind = EngineEvent::Kind::NavFailed;
          ev.time = now;
          ev.location = target;
          ev.reason = "blocked";
          dispatch(ev);
        } else {
          travel->seg_left = edge_minutes(map, travel->hops[travel->at], travel->hops[travel->at + 1]);
        }
      }
    }

    // 5. Omniscient observation: every watched room, every minute.
    if (omniscient && !engine.privacy_on()) {
      std::set<std::string> rooms;
      for (const auto& r : plan.reminders)
        if (r.window.contains(now))
          for (const auto& loc : r.locations) rooms.insert(loc);
      for (const auto& loc : rooms) {
        Scene ground = cursor.state().scene_at(loc);
        SnapshotRecord snap = take_snapshot(ground, now, room_query(loc), em, plan.roster,
                                            referenced, rng, /*force_stage2=*/true);
        body_log("snapshot", {{"loc", loc},
                              {"persons", std::to_string(snap.stage1.person_count)},
                              {"stage2", "yes"},
                              {"scene", scene_field(snap.perceived)},
                              {"objs", join_set(snap.perceived.objects)}});
        EngineEvent ev;
        ev.kind = EngineEvent::Kind::SnapshotResult;
        ev.time = now;
        ev.snapshot = std::move(snap);
        dispatch(ev);
      }
    }

    // 6. Scheduling prompt when the body is free.
    if (!travel) {
      EngineEvent ev;
      ev.kind = EngineEvent::Kind::Tick;
      ev.time = now;
      dispatch(ev);
    }

    // 7. Battery, end of minute.
    if (!omniscient) {
      if (docked) {
        battery = std::min(cfg.battery_capacity, battery + cfg.charge_rate);
      } else {
        battery -= moved_this_tick ? cfg.drain_moving : cfg.drain_idle;
        if (battery <= 0) {
          battery = 0;
          offline = true;
          travel.reset();
          body_log("battery", {{"level", "0"}, {"state", "offline"}});
          body_log("offline", {{"loc", position}});
        }
      }
    }
  }

  // Closing record so every run states how it ended.
  now = SimTime::from_abs(horizon - 1);
  body_log("battery", {{"level", std::to_string(battery)}, {"state", battery_state()}});
  return log;
}

}  // namespace rsent
