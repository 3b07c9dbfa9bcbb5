#include "engine.hpp"

#include <algorithm>

namespace rsent {

DwellTracker update_dwell(DwellTracker t, Observation obs, long now_abs, int max_gap) {
  switch (obs) {
    case Observation::False:
      return DwellTracker{};
    case Observation::Unobserved:
      // Gaps are accounted lazily at the next observed-true minute; an
      // explicit unobserved mark only kills streaks already too stale.
      if (!t.idle() && now_abs - t.last_true > max_gap) return DwellTracker{};
      return t;
    case Observation::True:
      if (t.idle()) return DwellTracker{now_abs, now_abs, 0};
      if (now_abs == t.last_true) return t;  // second look within one minute
      if (now_abs - t.last_true - 1 > max_gap) return DwellTracker{now_abs, now_abs, 0};
      t.credit += 1;
      t.last_true = now_abs;
      return t;
  }
  return t;
}

Engine::Engine(const Plan& plan, const HomeMap& map, const EngineParams& params)
    : plan_(&plan), map_(&map), params_(params) {
  for (const auto& r : plan.reminders) by_id_.push_back(&r);
  std::sort(by_id_.begin(), by_id_.end(),
            [](const ReminderSpec* a, const ReminderSpec* b) { return a->id < b->id; });
  for (const auto& l : map.locations) last_observed_[l] = -1;
  position_ = map.dock;
}

int Engine::count_on_day(const std::string& rid, int day) const {
  auto it = ledger_.find(rid);
  if (it == ledger_.end()) return 0;
  int n = 0;
  for (const auto& d : it->second)
    if (d.abs / kMinutesPerDay + 1 == day) ++n;
  return n;
}

long Engine::last_delivery_abs(const std::string& rid) const {
  auto it = ledger_.find(rid);
  if (it == ledger_.end() || it->second.empty()) return -1;
  return it->second.back().abs;
}

std::optional<std::string> Engine::gate_check(const ReminderSpec& r, const SimTime& t,
                                              bool privacy_exempt) const {
  if (!r.window.contains(t)) return "out_of_window";
  if (privacy_on_ && !privacy_exempt) return "privacy";
  if (count_on_day(r.id, t.day) >= r.daily_max) return "exhausted";
  long last = last_delivery_abs(r.id);
  if (last >= 0 && t.abs() - last < r.repeat_min) return "cooldown";
  return std::nullopt;
}

bool Engine::any_pending(const SimTime& t) const {
  // Pending = inside an open window with deliveries still owed today.
  for (const auto* r : by_id_) {
    if (!r->window.applies_on(t.day)) continue;
    if (t.minute >= r->window.start && t.minute < r->window.end &&
        count_on_day(r->id, t.day) < r->daily_max)
      return true;
  }
  return false;
}

std::optional<long> Engine::next_window_start(long after_abs) const {
  SimTime t = SimTime::from_abs(after_abs);
  std::optional<long> best;
  auto consider = [&](long abs) {
    if (abs > after_abs && (!best || abs < *best)) best = abs;
  };
  for (const auto* r : by_id_) {
    if (r->window.daily) {
      consider(static_cast<long>(t.day - 1) * kMinutesPerDay + r->window.start);
      consider(static_cast<long>(t.day) * kMinutesPerDay + r->window.start);
    } else {
      for (int d : r->window.days) {
        if (d < t.day) continue;
        consider(static_cast<long>(d - 1) * kMinutesPerDay + r->window.start);
        if (d > t.day) break;  // days set is ordered; first future day is enough
      }
    }
  }
  return best;
}

bool Engine::auto_privacy_level(const SimTime& t) const {
  if (any_pending(t)) return false;
  auto next = next_window_start(t.abs());
  if (!next) return true;
  return t.abs() < *next - params_.privacy_lead;
}

std::vector<LogRecord> Engine::begin_minute(const SimTime& t) {
  now_abs_ = std::max(now_abs_, t.abs());
  if (minute_begun_ >= t.abs()) return {};
  minute_begun_ = t.abs();

  bool manual = manual_until_ > t.abs();
  bool effective = manual ? true : auto_privacy_level(t);
  if (effective == privacy_on_) return {};

  Result out;
  privacy_on_ = effective;
  const char* cause = "auto";
  if (!effective && manual_until_ == t.abs()) cause = "expiry";
  log(out, t, "privacy", {{"state", effective ? "on" : "off"}, {"cause", cause}});
  if (effective && seeking_) abort_seek_for_privacy(out, t);
  return out.logs;
}

Engine::Result Engine::handle_event(const EngineEvent& ev) {
  now_abs_ = std::max(now_abs_, ev.time.abs());
  Result out;
  switch (ev.kind) {
    case EngineEvent::Kind::Tick:
      on_tick(out, ev.time);
      break;
    case EngineEvent::Kind::Arrived:
      on_arrived(out, ev);
      break;
    case EngineEvent::Kind::NavFailed:
      on_nav_failed(out, ev);
      break;
    case EngineEvent::Kind::SnapshotResult:
      on_snapshot(out, ev);
      break;
    case EngineEvent::Kind::Checkin:
      on_checkin(out, ev);
      break;
    case EngineEvent::Kind::MessagePost: {
      Result r = post_message(ev.member, ev.to, ev.text, ev.time);
      out.logs.insert(out.logs.end(), r.logs.begin(), r.logs.end());
      break;
    }
    case EngineEvent::Kind::PrivacyRequest:
      on_privacy_request(out, ev);
      break;
    case EngineEvent::Kind::DockResult:
      docked_ = ev.ok;
      if (ev.ok) {
        intent_ = Intent::None;
        traveling_ = false;
      }
      break;
    case EngineEvent::Kind::Battery:
      break;  // informational
  }
  return out;
}

Command Engine::schedule_next(const SimTime& t) const {
  Command dock;
  dock.kind = Command::Kind::Dock;
  if (privacy_on_) return dock;

  bool found = false;
  std::tuple<long, int, std::string, std::string> best_key;
  std::string best_loc;
  for (const auto* r : by_id_) {
    if (gate_check(*r, t, false)) continue;  // not deliverable now
    for (const auto& loc : r->locations) {
      auto it = last_observed_.find(loc);
      long seen = it == last_observed_.end() ? -1 : it->second;
      std::tuple<long, int, std::string, std::string> key{seen, r->window.end, r->id, loc};
      if (!found || key < best_key) {
        found = true;
        best_key = key;
        best_loc = loc;
      }
    }
  }
  if (!found) return dock;

  Command cmd;
  if (best_loc == position_ && !traveling_) {
    cmd.kind = Command::Kind::TakeSnapshot;
    cmd.location = best_loc;
  } else {
    cmd.kind = Command::Kind::Goto;
    cmd.location = best_loc;
  }
  return cmd;
}

void Engine::on_tick(Result& out, const SimTime& t) {
  auto pre = begin_minute(t);  // defensive: normally already run this minute
  out.logs.insert(out.logs.begin(), pre.begin(), pre.end());
  if (params_.omniscient) return;  // observation is injected, nothing to schedule
  if (traveling_ || seeking_) return;

  Command cmd = schedule_next(t);
  switch (cmd.kind) {
    case Command::Kind::Dock:
      if (docked_) return;  // already charging
      intent_ = Intent::Dock;
      traveling_ = position_ != map_->dock;
      travel_target_ = map_->dock;
      out.commands.push_back(cmd);
      return;
    case Command::Kind::Goto:
      intent_ = Intent::Patrol;
      traveling_ = true;
      travel_target_ = cmd.location;
      docked_ = false;
      out.commands.push_back(cmd);
      return;
    case Command::Kind::TakeSnapshot: {
      // Don't look at the same room twice within one minute (e.g. right
      // after the arrival snapshot); nothing new can be seen yet.
      auto it = last_observed_.find(cmd.location);
      if (it != last_observed_.end() && it->second == t.abs()) return;
      intent_ = Intent::Patrol;
      out.commands.push_back(cmd);
      return;
    }
    default:
      return;
  }
}

void Engine::on_arrived(Result& out, const EngineEvent& ev) {
  position_ = ev.location;
  docked_ = false;
  if (!traveling_ || ev.location != travel_target_) return;  // position sync only
  traveling_ = false;
  switch (intent_) {
    case Intent::Patrol:
      intent_ = Intent::None;
      if (!privacy_on_) {
        Command c;
        c.kind = Command::Kind::TakeSnapshot;
        c.location = position_;
        out.commands.push_back(c);
      }
      break;
    case Intent::Dock: {
      Command c;
      c.kind = Command::Kind::Dock;
      out.commands.push_back(c);
      break;
    }
    case Intent::Seek:
      if (privacy_on_) {
        abort_seek_for_privacy(out, SimTime::from_abs(now_abs_));
      } else {
        Command c;
        c.kind = Command::Kind::TakeSnapshot;
        c.location = position_;
        out.commands.push_back(c);
      }
      break;
    case Intent::None:
      break;
  }
}

void Engine::on_nav_failed(Result& out, const EngineEvent& ev) {
  traveling_ = false;
  SimTime t = SimTime::from_abs(now_abs_);
  log(out, t, "help_request", {{"loc", ev.location}, {"reason", ev.reason}});
  // Count the room as observed so the scheduler rotates instead of retrying
  // the same unreachable room every minute.
  last_observed_[ev.location] = now_abs_;
  if (seeking_) {
    seek_step(out, t);
  } else {
    intent_ = Intent::None;
  }
}

void Engine::on_snapshot(Result& out, const EngineEvent& ev) {
  const SnapshotRecord& snap = ev.snapshot;
  const SimTime& t = ev.time;
  last_observed_[snap.location] = t.abs();
  if (intent_ == Intent::Patrol && !seeking_) intent_ = Intent::None;

  // Streak updates and delivery attempts, reminder-id order.
  for (const auto* r : by_id_) {
    if (!r->window.contains(t)) continue;
    if (std::find(r->locations.begin(), r->locations.end(), snap.location) == r->locations.end())
      continue;
    bool value = snap.stage2_ran && eval_predicate(*r->predicate, snap.perceived, plan_->roster);
    auto key = std::make_pair(r->id, snap.location);
    DwellTracker next = update_dwell(trackers_[key], value ? Observation::True : Observation::False,
                                     t.abs(), params_.max_gap);
    trackers_[key] = next;
    if (value && next.armed(r->dwell_min) && !(seeking_ && seek_reminder_ == r->id))
      attempt(out, *r, snap.perceived, t);
  }

  // Active search: did this look find the person?
  if (seeking_ && snap.stage2_ran && snap.perceived.find_person(seek_target_)) {
    const ReminderSpec* r = plan_->find_reminder(seek_reminder_);
    auto reason = gate_check(*r, t, false);
    if (reason)
      log(out, t, "suppressed",
          {{"reminder", r->id}, {"reason", *reason}, {"loc", snap.location}});
    else
      deliver(out, *r, {seek_target_}, "seek", snap.location, t);
    seeking_ = false;
    seek_awaiting_.clear();
    seek_queue_.clear();
    intent_ = Intent::None;
    launch_pending_seek(out, t);
  } else if (seeking_ && snap.location == seek_awaiting_) {
    seek_awaiting_.clear();
    seek_step(out, t);
  }
}

void Engine::attempt(Result& out, const ReminderSpec& r, const Scene& seen, const SimTime& t) {
  auto wanted = plan_->resolved_recipients(r);
  std::vector<std::string> here;
  for (const auto& id : wanted)
    if (seen.find_person(id)) here.push_back(id);

  if (!here.empty()) {
    auto reason = gate_check(r, t, false);
    if (reason)
      log(out, t, "suppressed", {{"reminder", r.id}, {"reason", *reason}, {"loc", seen.location}});
    else
      deliver(out, r, here, "proactive", seen.location, t);
    return;
  }

  if (r.action.kind == ActionKind::SeekThenSpeak) {
    if (seen.find_person(r.action.seek_target)) {
      // The person to fetch is right here even though no recipient is.
      auto reason = gate_check(r, t, false);
      if (reason)
        log(out, t, "suppressed",
            {{"reminder", r.id}, {"reason", *reason}, {"loc", seen.location}});
      else
        deliver(out, r, {r.action.seek_target}, "seek", seen.location, t);
      return;
    }
    auto reason = gate_check(r, t, false);
    if (reason) {
      log(out, t, "suppressed", {{"reminder", r.id}, {"reason", *reason}, {"loc", seen.location}});
      return;
    }
    start_seek(out, r, seen.location, t);
    return;
  }

  log(out, t, "suppressed",
      {{"reminder", r.id}, {"reason", "no_recipient"}, {"loc", seen.location}});
}

void Engine::start_seek(Result& out, const ReminderSpec& r, const std::string& from_loc,
                        const SimTime& t) {
  if (seeking_) {
    if (seek_reminder_ != r.id &&
        std::find(pending_seeks_.begin(), pending_seeks_.end(), r.id) == pending_seeks_.end())
      pending_seeks_.push_back(r.id);
    return;
  }
  seeking_ = true;
  seek_reminder_ = r.id;
  seek_target_ = r.action.seek_target;
  seek_deadline_ = t.abs() + params_.seek_timeout;
  seek_queue_.clear();
  seek_awaiting_.clear();

  // Likely rooms first: the watched rooms of every reminder addressed to the
  // person, in reminder-id order.  Then the rest of the home, least recently
  // observed first.  The room that just came up empty is skipped.
  std::vector<std::string> order;
  auto push = [&](const std::string& loc) {
    if (loc == from_loc) return;
    if (std::find(order.begin(), order.end(), loc) == order.end()) order.push_back(loc);
  };
  for (const auto* other : by_id_)
    if (plan_->is_recipient(*other, seek_target_))
      for (const auto& loc : other->locations) push(loc);
  std::vector<std::pair<std::pair<long, std::string>, std::string>> rest;
  for (const auto& [loc, seen] : last_observed_) rest.push_back({{seen, loc}, loc});
  std::sort(rest.begin(), rest.end());
  for (const auto& e : rest) push(e.second);

  for (const auto& loc : order) seek_queue_.push_back(loc);
  seek_step(out, t);
}

void Engine::seek_step(Result& out, const SimTime& t) {
  if (t.abs() >= seek_deadline_) {
    end_seek(out, t, "seek_timeout");
    return;
  }
  if (seek_queue_.empty()) {
    end_seek(out, t, "seek_exhausted");
    return;
  }
  std::string next = seek_queue_.front();
  seek_queue_.pop_front();
  seek_awaiting_ = next;
  intent_ = Intent::Seek;
  if (next == position_ && !traveling_) {
    Command c;
    c.kind = Command::Kind::TakeSnapshot;
    c.location = next;
    out.commands.push_back(c);
  } else {
    traveling_ = true;
    travel_target_ = next;
    docked_ = false;
    Command c;
    c.kind = Command::Kind::Goto;
    c.location = next;
    out.commands.push_back(c);
  }
}

void Engine::end_seek(Result& out, const SimTime& t, const char* reason) {
  log(out, t, "suppressed",
      {{"reminder", seek_reminder_}, {"reason", reason}, {"loc", position_}});
  seeking_ = false;
  seek_awaiting_.clear();
  seek_queue_.clear();
  intent_ = Intent::None;
  launch_pending_seek(out, t);
}

void Engine::launch_pending_seek(Result& out, const SimTime& t) {
  while (!pending_seeks_.empty() && !seeking_) {
    std::string rid = pending_seeks_.front();
    pending_seeks_.pop_front();
    const ReminderSpec* r = plan_->find_reminder(rid);
    auto reason = gate_check(*r, t, false);
    if (reason) {
      log(out, t, "suppressed", {{"reminder", rid}, {"reason", *reason}, {"loc", position_}});
      continue;
    }
    start_seek(out, *r, position_, t);
  }
}

void Engine::abort_seek_for_privacy(Result& out, const SimTime& t) {
  log(out, t, "suppressed",
      {{"reminder", seek_reminder_}, {"reason", "privacy"}, {"loc", position_}});
  seeking_ = false;
  seek_awaiting_.clear();
  seek_queue_.clear();
  pending_seeks_.clear();
  intent_ = Intent::None;
}

void Engine::on_checkin(Result& out, const EngineEvent& ev) {
  const SimTime& t = ev.time;
  std::vector<std::string> shown;
  for (const auto* r : by_id_) {
    if (!plan_->is_recipient(*r, ev.member)) continue;
    if (gate_check(*r, t, /*privacy_exempt=*/true)) continue;
    deliver(out, *r, {ev.member}, "checkin", "", t);
    shown.push_back(r->id);
  }
  log(out, t, "checkin", {{"member", ev.member}, {"shown", join_list(shown)}});
}

void Engine::on_privacy_request(Result& out, const EngineEvent& ev) {
  const SimTime& t = ev.time;
  switch (ev.privacy) {
    case EngineEvent::PrivacyReq::OnForMinutes:
      manual_until_ = std::max(manual_until_, t.abs() + ev.privacy_minutes);
      break;
    case EngineEvent::PrivacyReq::OnRestOfDay:
      manual_until_ = std::max(manual_until_, static_cast<long>(t.day) * kMinutesPerDay);
      break;
    case EngineEvent::PrivacyReq::Off:
      manual_until_ = -1;
      break;
  }
  bool effective = manual_until_ > t.abs() ? true : auto_privacy_level(t);
  if (effective != privacy_on_) {
    privacy_on_ = effective;
    log(out, t, "privacy", {{"state", effective ? "on" : "off"}, {"cause", "manual"}});
    if (effective && seeking_) abort_seek_for_privacy(out, t);
  }
}

Engine::Result Engine::post_message(const std::string& from, const std::string& to,
                                    const std::string& text, const SimTime& t) {
  Result out;
  board_.push_back({from, to, text, t, false});
  log(out, t, "message", {{"op", "post"}, {"from", from}, {"to", to}, {"text", text}});
  return out;
}

std::pair<Engine::Result, std::vector<Message>> Engine::check_messages(const std::string& member,
                                                                       const SimTime& t) {
  Result out;
  std::vector<Message> got;
  for (auto& m : board_) {
    if (m.to != member || m.read) continue;
    m.read = true;
    got.push_back(m);
  }
  log(out, t, "message",
      {{"op", "check"}, {"member", member}, {"unread", std::to_string(got.size())}});
  return {out, got};
}

bool Engine::has_unread(const std::string& member) const {
  for (const auto& m : board_)
    if (m.to == member && !m.read) return true;
  return false;
}

void Engine::handle_rescue(const SimTime& t) {
  now_abs_ = std::max(now_abs_, t.abs());
  position_ = map_->dock;
  docked_ = true;
  traveling_ = false;
  seeking_ = false;
  seek_awaiting_.clear();
  seek_queue_.clear();
  pending_seeks_.clear();
  intent_ = Intent::None;
}

void Engine::log(Result& out, const SimTime& t, std::string kind,
                 std::vector<std::pair<std::string, std::string>> fields) {
  LogRecord rec;
  rec.time = t;
  rec.kind = std::move(kind);
  rec.fields = std::move(fields);
  out.logs.push_back(std::move(rec));
}

void Engine::deliver(Result& out, const ReminderSpec& r, const std::vector<std::string>& to,
                     const std::string& mode, const std::string& loc, const SimTime& t) {
  ledger_[r.id].push_back({t.abs(), mode});
  log(out, t, "delivered",
      {{"reminder", r.id}, {"mode", mode}, {"to", join_list(to)}, {"loc", loc},
       {"text", r.action.text}});
  // Delivery settles the condition for now; any streaks start over.
  for (auto it = trackers_.begin(); it != trackers_.end();) {
    if (it->first.first == r.id)
      it = trackers_.erase(it);
    else
      ++it;
  }
  Command c;
  c.kind = Command::Kind::Speak;
  c.reminder = r.id;
  c.recipients = to;
  c.text = r.action.text;
  out.commands.push_back(c);
}

std::pair<Engine, Engine::Result> step_engine(Engine e, const EngineEvent& ev) {
  Engine::Result r = e.handle_event(ev);
  return {std::move(e), std::move(r)};
}

}  // namespace rsent
