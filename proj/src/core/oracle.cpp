#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "textutil.hpp"

namespace rsent {

std::vector<OracleDelivery> oracle_deliveries(const Plan& plan, const Trace& trace, int days,
                                              const OracleParams& params) {
  std::vector<OracleDelivery> out;

  // Reminders in id order; every per-minute sweep uses this order.
  std::vector<const ReminderSpec*> by_id;
  for (const auto& r : plan.reminders) by_id.push_back(&r);
  std::sort(by_id.begin(), by_id.end(),
            [](const ReminderSpec* a, const ReminderSpec* b) { return a->id < b->id; });

  // Household state, folded inline.
  struct PersonNow {
    std::string room;  // empty = away
    std::set<std::string> doing;
  };
  std::map<std::string, PersonNow> people;
  std::map<std::string, std::set<std::string>> stuff;

  // Condition streaks per (reminder, room).
  struct Streak {
    long anchor = -1;
    long last = -1;
    int credit = 0;
  };
  std::map<std::pair<std::string, std::string>, Streak> streaks;

  std::map<std::string, std::vector<long>> delivered;  // reminder -> delivery minutes
  long manual_privacy_until = -1;

  auto count_on_day = [&](const std::string& rid, int day) {
    int n = 0;
    auto it = delivered.find(rid);
    if (it != delivered.end())
      for (long abs : it->second)
        if (abs / kMinutesPerDay + 1 == day) ++n;
    return n;
  };
  auto pacing_ok = [&](const ReminderSpec& r, long abs, int day) {
    if (count_on_day(r.id, day) >= r.daily_max) return false;
    auto it = delivered.find(r.id);
    if (it != delivered.end() && !it->second.empty() && abs - it->second.back() < r.repeat_min)
      return false;
    return true;
  };
  auto note = [&](const ReminderSpec& r, long abs, const char* mode,
                  std::vector<std::string> to) {
    delivered[r.id].push_back(abs);
    out.push_back({abs, r.id, mode, std::move(to)});
    for (auto it = streaks.begin(); it != streaks.end();)
      it = it->first.first == r.id ? streaks.erase(it) : std::next(it);
  };

  size_t next_event = 0;
  const long horizon = static_cast<long>(days) * kMinutesPerDay;

  for (long abs = 0; abs < horizon; ++abs) {
    const int day = static_cast<int>(abs / kMinutesPerDay) + 1;
    const int minute = static_cast<int>(abs % kMinutesPerDay);
    const SimTime t{day, minute};

    // 1. Household + robot-directed events for this minute, file order.
    while (next_event < trace.events.size() && trace.events[next_event].time.abs() <= abs) {
      const TraceEvent& ev = trace.events[next_event++];
      switch (ev.kind) {
        case TraceEvent::Kind::Move:
          if (ev.location == "away")
            people.erase(ev.member);
          else
            people[ev.member] = {ev.location, ev.activities};
          break;
        case TraceEvent::Kind::SetObjects:
          for (const auto& [add, tag] : ev.object_deltas) {
            if (add)
              stuff[ev.location].insert(tag);
            else
              stuff[ev.location].erase(tag);
          }
          break;
        case TraceEvent::Kind::Checkin:
          for (const auto* r : by_id) {
            if (!plan.is_recipient(*r, ev.member)) continue;
            if (!r->window.contains(t)) continue;
            if (!pacing_ok(*r, abs, day)) continue;
            note(*r, abs, "checkin", {ev.member});
          }
          break;
        case TraceEvent::Kind::Privacy:
          if (ev.privacy == TraceEvent::PrivacyKind::Off)
            manual_privacy_until = -1;
          else if (ev.privacy == TraceEvent::PrivacyKind::OnRestOfDay)
            manual_privacy_until =
                std::max(manual_privacy_until, static_cast<long>(day) * kMinutesPerDay);
          else
            manual_privacy_until = std::max(manual_privacy_until, abs + ev.privacy_minutes);
          break;
        default:
          break;  // edges and rescues do not exist for the reference
      }
    }

    // 2. Privacy for this minute: manual override, else automatic while no
    //    window is open with deliveries owed and the next start is far away.
    bool privacy = manual_privacy_until > abs;
    if (!privacy) {
      bool idle_now = true;
      for (const auto* r : by_id) {
        if (!r->window.applies_on(day)) continue;
        if (minute >= r->window.start && minute < r->window.end &&
            count_on_day(r->id, day) < r->daily_max) {
          idle_now = false;
          break;
        }
      }
      if (idle_now) {
        long next_start = -1;
        for (const auto* r : by_id) {
          auto consider = [&](long cand) {
            if (cand > abs && (next_start < 0 || cand < next_start)) next_start = cand;
          };
          if (r->window.daily) {
            consider(static_cast<long>(day - 1) * kMinutesPerDay + r->window.start);
            consider(static_cast<long>(day) * kMinutesPerDay + r->window.start);
          } else {
            for (int d : r->window.days)
              if (d >= day) consider(static_cast<long>(d - 1) * kMinutesPerDay + r->window.start);
          }
        }
        privacy = next_start < 0 || abs < next_start - params.privacy_lead;
      }
    }
    if (privacy) continue;  // no observation, no proactive deliveries

    // 3. Perfect observation of every watched room, room-major, rooms and
    //    reminders in sorted order.
    std::set<std::string> rooms;
    for (const auto* r : by_id)
      if (r->window.contains(t))
        for (const auto& loc : r->locations) rooms.insert(loc);

    for (const auto& room : rooms) {
      Scene scene;
      scene.location = room;
      for (const auto& [id, pn] : people)
        if (pn.room == room) scene.persons.push_back({id, pn.doing});
      auto it = stuff.find(room);
      if (it != stuff.end()) scene.objects = it->second;

      for (const auto* r : by_id) {
        if (!r->window.contains(t)) continue;
        if (std::find(r->locations.begin(), r->locations.end(), room) == r->locations.end())
          continue;

        bool value = eval_predicate(*r->predicate, scene, plan.roster);
        auto key = std::make_pair(r->id, room);
        if (!value) {
          streaks.erase(key);
          continue;
        }
        Streak& s = streaks[key];
        if (s.anchor < 0) {
          s = {abs, abs, 0};
        } else if (abs != s.last) {
          if (abs - s.last - 1 > params.max_gap) {
            s = {abs, abs, 0};
          } else {
            s.credit += 1;
            s.last = abs;
          }
        }
        if (s.credit < r->dwell_min) continue;

        // Armed and true: deliver to whoever should hear it and is here;
        // else resolve a person-fetch instantly; else nothing.
        auto wanted = plan.resolved_recipients(*r);
        std::vector<std::string> here;
        for (const auto& id : wanted) {
          auto pit = people.find(id);
          if (pit != people.end() && pit->second.room == room) here.push_back(id);
        }
        if (!here.empty()) {
          if (pacing_ok(*r, abs, day)) note(*r, abs, "proactive", here);
        } else if (r->action.kind == ActionKind::SeekThenSpeak) {
          auto pit = people.find(r->action.seek_target);
          if (pit != people.end() && !pit->second.room.empty() && pacing_ok(*r, abs, day))
            note(*r, abs, "proactive", {r->action.seek_target});
        }
      }
    }
  }
  return out;
}

std::string format_oracle(const std::vector<OracleDelivery>& ds) {
  std::string out;
  for (const auto& d : ds) {
    out += "t=" + format_sim_time(SimTime::from_abs(d.abs)) + " reminder=" + d.reminder +
           " mode=" + d.mode + " to=" + join_list(d.recipients) + "\n";
  }
  return out;
}

Parsed<std::vector<OracleDelivery>> parse_oracle(const std::string& text) {
  Parsed<std::vector<OracleDelivery>> result;
  std::vector<OracleDelivery> ds;
  for (const auto& line : split_source_lines(text)) {
    auto bad = [&]() {
      result.diags.push_back({Severity::Error, line.number, "syntax_error", "bad delivery line"});
    };
    OracleDelivery d;
    bool have_time = false;
    bool ok = true;
    for (const auto& tok : split_tokens(line.text)) {
      size_t eq = tok.find('=');
      if (eq == std::string::npos) {
        ok = false;
        break;
      }
      std::string key = tok.substr(0, eq);
      std::string value = tok.substr(eq + 1);
      if (key == "t") {
        size_t colon = value.find(':');
        if (value.size() < 7 || value[0] != 'd' || colon == std::string::npos ||
            value.size() != colon + 6) {
          ok = false;
          break;
        }
        auto day = parse_int(value.substr(1, colon - 1), 1, 100000);
        auto clock = parse_clock(value.substr(colon + 1));
        if (!day || !clock || *clock >= kMinutesPerDay) {
          ok = false;
          break;
        }
        d.abs = SimTime{*day, *clock}.abs();
        have_time = true;
      } else if (key == "reminder") {
        d.reminder = value;
      } else if (key == "mode") {
        d.mode = value;
      } else if (key == "to") {
        d.recipients = split_list(value);
      } else {
        ok = false;
        break;
      }
    }
    if (!ok || !have_time || d.reminder.empty() || d.mode.empty()) {
      bad();
      continue;
    }
    ds.push_back(std::move(d));
  }
  if (!has_errors(result.diags)) result.value = std::move(ds);
  return result;
}

DeliveryDiff diff_deliveries(const std::vector<LogRecord>& log,
                             const std::vector<OracleDelivery>& oracle) {
  auto line_of = [](long abs, const std::string& rid, const std::string& mode,
                    const std::vector<std::string>& to) {
    std::string m = mode == "seek" ? "proactive" : mode;
    return "t=" + format_sim_time(SimTime::from_abs(abs)) + " reminder=" + rid + " mode=" + m +
           " to=" + join_list(to);
  };

  std::vector<std::string> got;
  for (const auto& rec : log) {
    if (rec.kind != "delivered") continue;
    const auto* rid = rec.field("reminder");
    const auto* mode = rec.field("mode");
    const auto* to = rec.field("to");
    if (!rid || !mode || !to) continue;
    got.push_back(line_of(rec.time.abs(), *rid, *mode, split_list(*to)));
  }
  std::vector<std::string> want;
  for (const auto& d : oracle) want.push_back(line_of(d.abs, d.reminder, d.mode, d.recipients));

  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());

  DeliveryDiff diff;
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                      std::back_inserter(diff.missing));
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                      std::back_inserter(diff.extra));
  return diff;
}

}  // namespace rsent
