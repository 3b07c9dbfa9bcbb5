#include "plan.hpp"

#include <algorithm>
#include <map>

#include "textutil.hpp"

namespace rsent {

std::vector<std::string> Plan::resolved_recipients(const ReminderSpec& r) const {
  std::vector<std::string> out;
  if (r.recipients_all) {
    for (const auto& m : roster) out.push_back(m.id);
    std::sort(out.begin(), out.end());
  } else {
    out = r.recipients;  // already sorted unique
  }
  return out;
}

bool Plan::is_recipient(const ReminderSpec& r, const std::string& member) const {
  if (r.recipients_all) return find_member(roster, member) != nullptr;
  return std::binary_search(r.recipients.begin(), r.recipients.end(), member);
}

std::set<std::string> Plan::referenced_activity_tags() const {
  PredicateRefs refs;
  for (const auto& r : reminders)
    if (r.predicate) collect_refs(*r.predicate, refs);
  return refs.activity_tags;
}

std::set<std::string> Plan::referenced_object_tags() const {
  PredicateRefs refs;
  for (const auto& r : reminders)
    if (r.predicate) collect_refs(*r.predicate, refs);
  return refs.object_tags;
}

namespace {

std::optional<std::string> parse_quoted(const std::string& rest) {
  size_t open = rest.find('"');
  if (open == std::string::npos) return std::nullopt;
  for (size_t i = 0; i < open; ++i)
    if (rest[i] != ' ' && rest[i] != '\t') return std::nullopt;
  std::string out;
  size_t i = open + 1;
  while (i < rest.size()) {
    char c = rest[i];
    if (c == '\\') {
      if (i + 1 >= rest.size()) return std::nullopt;
      char n = rest[i + 1];
      if (n != '"' && n != '\\') return std::nullopt;
      out += n;
      i += 2;
      continue;
    }
    if (c == '"') {
      for (size_t j = i + 1; j < rest.size(); ++j)
        if (rest[j] != ' ' && rest[j] != '\t') return std::nullopt;
      return out;
    }
    out += c;
    ++i;
  }
  return std::nullopt;  // unterminated
}

std::string quote_text(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::optional<TimeWindow> parse_window_tokens(const std::vector<std::string>& tok,
                                              std::string& why) {
  // tok: HH:MM-HH:MM (daily | days N...)
  if (tok.empty()) {
    why = "missing window range";
    return std::nullopt;
  }
  const std::string& range = tok[0];
  size_t dash = range.find('-');
  if (dash == std::string::npos) {
    why = "window range must look like HH:MM-HH:MM";
    return std::nullopt;
  }
  auto start = parse_clock(range.substr(0, dash));
  auto end = parse_clock(range.substr(dash + 1));
  if (!start || !end) {
    why = "bad clock value in window range";
    return std::nullopt;
  }
  TimeWindow w;
  w.start = *start;
  w.end = *end;
  if (tok.size() == 2 && tok[1] == "daily") {
    w.daily = true;
  } else if (tok.size() >= 3 && tok[1] == "days") {
    w.daily = false;
    for (size_t i = 2; i < tok.size(); ++i) {
      auto d = parse_int(tok[i], 1, 100000);
      if (!d) {
        why = "day numbers must be integers >= 1";
        return std::nullopt;
      }
      w.days.insert(*d);
    }
  } else {
    why = "window must end with 'daily' or 'days N...'";
    return std::nullopt;
  }
  return w;
}

struct ReminderFieldSeen {
  bool recipients = false, window = false, locations = false, predicate = false, action = false;
  bool dwell = false, repeat = false, daily_max = false;
};

}  // namespace

Parsed<Plan> parse_plan(const std::string& text) {
  Parsed<Plan> result;
  auto& diags = result.diags;
  Plan plan;

  auto err = [&](int line, const char* code, std::string msg) {
    diags.push_back({Severity::Error, line, code, std::move(msg)});
  };

  auto lines = split_source_lines(text);
  if (lines.empty()) {
    err(0, "syntax_error", "empty plan file");
    return result;
  }
  {
    auto tok = split_tokens(lines.front().text);
    if (tok.size() != 2 || tok[0] != "plan" || tok[1] != "v1") {
      err(lines.front().number, "syntax_error", "expected 'plan v1' header");
      return result;
    }
  }

  ReminderSpec* cur = nullptr;
  ReminderFieldSeen seen;
  int cur_line = 0;

  auto finish_reminder = [&]() {
    if (!cur) return;
    if (!seen.recipients) err(cur_line, "missing_field", "reminder '" + cur->id + "' has no recipients");
    if (!seen.window) err(cur_line, "missing_field", "reminder '" + cur->id + "' has no window");
    if (!seen.locations) err(cur_line, "missing_field", "reminder '" + cur->id + "' has no locations");
    if (!seen.predicate) err(cur_line, "missing_field", "reminder '" + cur->id + "' has no predicate");
    if (!seen.action) err(cur_line, "missing_field", "reminder '" + cur->id + "' has no action");
    cur = nullptr;
  };

  for (size_t i = 1; i < lines.size(); ++i) {
    int ln = lines[i].number;
    auto tok = split_tokens(lines[i].text);
    const std::string& kw = tok[0];

    if (!cur) {
      if (kw == "map" && tok.size() == 2) {
        plan.map_ref = tok[1];
      } else if (kw == "member" && tok.size() == 3 && is_identifier(tok[1])) {
        Role role;
        if (tok[2] == "adult")
          role = Role::Adult;
        else if (tok[2] == "child")
          role = Role::Child;
        else {
          err(ln, "bad_role", "member role must be 'adult' or 'child'");
          continue;
        }
        plan.roster.push_back({tok[1], role});
      } else if (kw == "reminder" && tok.size() == 2 && is_identifier(tok[1])) {
        plan.reminders.emplace_back();
        cur = &plan.reminders.back();
        cur->id = tok[1];
        seen = ReminderFieldSeen{};
        cur_line = ln;
      } else {
        err(ln, "syntax_error", "unrecognized plan line: " + lines[i].text);
      }
      continue;
    }

    // Inside a reminder block.
    if (kw == "end" && tok.size() == 1) {
      finish_reminder();
    } else if (kw == "recipients" && tok.size() >= 2) {
      seen.recipients = true;
      if (tok.size() == 2 && tok[1] == "all") {
        cur->recipients_all = true;
      } else {
        for (size_t t = 1; t < tok.size(); ++t) {
          if (!is_identifier(tok[t])) {
            err(ln, "syntax_error", "bad recipient '" + tok[t] + "'");
            continue;
          }
          cur->recipients.push_back(tok[t]);
        }
        std::sort(cur->recipients.begin(), cur->recipients.end());
        cur->recipients.erase(std::unique(cur->recipients.begin(), cur->recipients.end()),
                              cur->recipients.end());
      }
    } else if (kw == "window" && tok.size() >= 2) {
      seen.window = true;
      std::string why;
      auto w = parse_window_tokens({tok.begin() + 1, tok.end()}, why);
      if (!w)
        err(ln, "bad_window", why);
      else
        cur->window = *w;
    } else if (kw == "locations" && tok.size() >= 2) {
      seen.locations = true;
      for (size_t t = 1; t < tok.size(); ++t) {
        if (!is_identifier(tok[t])) {
          err(ln, "syntax_error", "bad location '" + tok[t] + "'");
          continue;
        }
        cur->locations.push_back(tok[t]);
      }
    } else if (kw == "predicate") {
      seen.predicate = true;
      size_t at = lines[i].text.find("predicate");
      std::string rest = lines[i].text.substr(at + 9);
      cur->predicate = parse_predicate(rest, ln, diags);
    } else if (kw == "action" && tok.size() >= 2) {
      seen.action = true;
      size_t at = lines[i].text.find(tok[1], lines[i].text.find("action") + 6);
      if (tok[1] == "speak") {
        cur->action.kind = ActionKind::Speak;
        auto quoted = parse_quoted(lines[i].text.substr(at + tok[1].size()));
        if (!quoted) {
          err(ln, "bad_action", "speak needs one quoted message");
          continue;
        }
        cur->action.text = *quoted;
      } else if (tok[1] == "seek_then_speak" && tok.size() >= 3 && is_identifier(tok[2])) {
        cur->action.kind = ActionKind::SeekThenSpeak;
        cur->action.seek_target = tok[2];
        size_t tgt = lines[i].text.find(tok[2], at + tok[1].size());
        auto quoted = parse_quoted(lines[i].text.substr(tgt + tok[2].size()));
        if (!quoted) {
          err(ln, "bad_action", "seek_then_speak needs a target and one quoted message");
          continue;
        }
        cur->action.text = *quoted;
      } else {
        err(ln, "bad_action", "action must be speak or seek_then_speak");
      }
    } else if (kw == "dwell" && tok.size() == 2) {
      seen.dwell = true;
      auto v = parse_int(tok[1], 0, 100000);
      if (!v)
        err(ln, "bad_dwell", "dwell must be an integer >= 0");
      else
        cur->dwell_min = *v;
    } else if (kw == "repeat" && tok.size() == 2) {
      seen.repeat = true;
      auto v = parse_int(tok[1], 1, 1000000);
      if (!v)
        err(ln, "bad_repeat", "repeat must be an integer >= 1");
      else
        cur->repeat_min = *v;
    } else if (kw == "daily_max" && tok.size() == 2) {
      seen.daily_max = true;
      auto v = parse_int(tok[1], 1, 1000000);
      if (!v)
        err(ln, "bad_daily_max", "daily_max must be an integer >= 1");
      else
        cur->daily_max = *v;
    } else {
      err(ln, "syntax_error", "unrecognized reminder line: " + lines[i].text);
    }
  }

  if (cur) err(cur_line, "syntax_error", "reminder '" + cur->id + "' missing 'end'");
  finish_reminder();

  sort_diagnostics(diags);
  if (!has_errors(diags)) result.value = std::move(plan);
  return result;
}

void validate_plan(const Plan& plan, const HomeMap& map, std::vector<Diagnostic>& diags) {
  auto err = [&](const char* code, std::string msg) {
    diags.push_back({Severity::Error, 0, code, std::move(msg)});
  };
  auto warn = [&](const char* code, std::string msg) {
    diags.push_back({Severity::Warning, 0, code, std::move(msg)});
  };

  std::set<std::string> member_ids;
  for (const auto& m : plan.roster)
    if (!member_ids.insert(m.id).second)
      err("duplicate_member", "member '" + m.id + "' declared twice");

  std::set<std::string> reminder_ids;
  for (const auto& r : plan.reminders) {
    if (!reminder_ids.insert(r.id).second)
      err("duplicate_reminder", "reminder '" + r.id + "' declared twice");

    for (const auto& who : r.recipients)
      if (!member_ids.count(who))
        err("unknown_member", "reminder '" + r.id + "' recipient '" + who + "' is not a member");

    if (r.window.start >= r.window.end)
      err("bad_window", "reminder '" + r.id + "' window is empty or reversed");
    if (r.window.end > kMinutesPerDay)
      err("bad_window", "reminder '" + r.id + "' window runs past midnight");
    if (!r.window.daily && r.window.days.empty())
      err("bad_window", "reminder '" + r.id + "' lists no days");

    std::set<std::string> seen_locs;
    for (const auto& loc : r.locations) {
      if (!map.has_location(loc))
        err("unknown_location", "reminder '" + r.id + "' watches unknown room '" + loc + "'");
      if (!seen_locs.insert(loc).second)
        err("duplicate_location", "reminder '" + r.id + "' lists room '" + loc + "' twice");
    }

    if (r.predicate) {
      PredicateRefs refs;
      collect_refs(*r.predicate, refs);
      for (const auto& id : refs.member_ids)
        if (!member_ids.count(id))
          err("unknown_member", "reminder '" + r.id + "' predicate mentions unknown '" + id + "'");

      // A plain speak reminder whose condition watches only people that can
      // never receive it usually means the recipient list is wrong.
      if (r.action.kind == ActionKind::Speak && !refs.member_ids.empty()) {
        auto recips = plan.resolved_recipients(r);
        bool overlap = false;
        for (const auto& id : refs.member_ids)
          if (std::binary_search(recips.begin(), recips.end(), id)) overlap = true;
        if (!overlap)
          warn("recipient_predicate_disjoint",
               "reminder '" + r.id + "' condition watches no one in its recipient list");
      }
    }

    if (r.action.kind == ActionKind::SeekThenSpeak && !member_ids.count(r.action.seek_target))
      err("unknown_member",
          "reminder '" + r.id + "' seeks unknown member '" + r.action.seek_target + "'");

    if (r.window.start < r.window.end && r.dwell_min >= r.window.end - r.window.start)
      err("dwell_too_long", "reminder '" + r.id + "' can never arm: dwell outlasts its window");
  }

  sort_diagnostics(diags);
}

std::string serialize_plan(const Plan& plan) {
  std::string out = "plan v1\n";
  if (!plan.map_ref.empty()) out += "map " + plan.map_ref + "\n";
  for (const auto& m : plan.roster)
    out += "member " + m.id + (m.role == Role::Adult ? " adult\n" : " child\n");
  for (const auto& r : plan.reminders) {
    out += "reminder " + r.id + "\n";
    out += "  recipients";
    if (r.recipients_all) {
      out += " all";
    } else {
      for (const auto& who : r.recipients) out += " " + who;
    }
    out += "\n  window " + format_clock(r.window.start) + "-" + format_clock(r.window.end);
    if (r.window.daily) {
      out += " daily";
    } else {
      out += " days";
      for (int d : r.window.days) out += " " + std::to_string(d);
    }
    out += "\n  locations";
    for (const auto& loc : r.locations) out += " " + loc;
    out += "\n  predicate " + (r.predicate ? serialize_predicate(*r.predicate) : "always");
    out += "\n  action ";
    if (r.action.kind == ActionKind::Speak)
      out += "speak " + quote_text(r.action.text);
    else
      out += "seek_then_speak " + r.action.seek_target + " " + quote_text(r.action.text);
    out += "\n  dwell " + std::to_string(r.dwell_min);
    out += "\n  repeat " + std::to_string(r.repeat_min);
    out += "\n  daily_max " + std::to_string(r.daily_max);
    out += "\nend\n";
  }
  return out;
}

bool plans_equal(const Plan& a, const Plan& b) {
  if (a.map_ref != b.map_ref || a.roster.size() != b.roster.size() ||
      a.reminders.size() != b.reminders.size())
    return false;
  for (size_t i = 0; i < a.roster.size(); ++i)
    if (a.roster[i].id != b.roster[i].id || a.roster[i].role != b.roster[i].role) return false;
  for (size_t i = 0; i < a.reminders.size(); ++i) {
    const auto& x = a.reminders[i];
    const auto& y = b.reminders[i];
    if (x.id != y.id || x.recipients_all != y.recipients_all || x.recipients != y.recipients ||
        x.window.start != y.window.start || x.window.end != y.window.end ||
        x.window.daily != y.window.daily || x.window.days != y.window.days ||
        x.locations != y.locations || x.action.kind != y.action.kind ||
        x.action.seek_target != y.action.seek_target || x.action.text != y.action.text ||
        x.dwell_min != y.dwell_min || x.repeat_min != y.repeat_min || x.daily_max != y.daily_max)
      return false;
    if (!x.predicate != !y.predicate) return false;
    if (x.predicate && !predicates_equal(*x.predicate, *y.predicate)) return false;
  }
  return true;
}

}  // namespace rsent
