#include "trace.hpp"

#include "textutil.hpp"

namespace rsent {

namespace {

// "d<D>" -> day number.
std::optional<int> parse_day(const std::string& s) {
  if (s.size() < 2 || s[0] != 'd') return std::nullopt;
  return parse_int(s.substr(1), 1, 100000);
}

}  // namespace

Parsed<Trace> parse_trace(const std::string& text, const Plan& plan, const HomeMap& map) {
  Parsed<Trace> result;
  auto& diags = result.diags;
  Trace trace;

  auto err = [&](int line, const char* code, std::string msg) {
    diags.push_back({Severity::Error, line, code, std::move(msg)});
  };

  std::set<std::pair<std::string, std::string>> known_edges;
  for (const auto& e : map.edges) known_edges.insert(edge_key(e.a, e.b));

  auto lines = split_source_lines(text);
  if (lines.empty()) {
    err(0, "syntax_error", "empty trace file");
    return result;
  }
  {
    auto tok = split_tokens(lines.front().text);
    if (tok.size() != 2 || tok[0] != "trace" || tok[1] != "v1") {
      err(lines.front().number, "syntax_error", "expected 'trace v1' header");
      return result;
    }
  }

  long prev_abs = -1;
  for (size_t i = 1; i < lines.size(); ++i) {
    int ln = lines[i].number;
    auto tok = split_tokens(lines[i].text);
    if (tok.size() < 3) {
      err(ln, "syntax_error", "expected 'd<D> HH:MM <event> ...'");
      continue;
    }
    auto day = parse_day(tok[0]);
    auto clock = parse_clock(tok[1]);
    if (!day || !clock || *clock >= kMinutesPerDay) {
      err(ln, "bad_time", "event time must be 'd<D> HH:MM' within the day");
      continue;
    }

    TraceEvent ev;
    ev.time = {*day, *clock};
    ev.line = ln;
    const std::string& kind = tok[2];

    if (kind == "move" && tok.size() >= 5) {
      ev.kind = TraceEvent::Kind::Move;
      ev.member = tok[3];
      ev.location = tok[4];
      if (!find_member(plan.roster, ev.member)) {
        err(ln, "unknown_member", "'" + ev.member + "' is not in the plan roster");
        continue;
      }
      if (ev.location != "away" && !map.has_location(ev.location)) {
        err(ln, "unknown_location", "'" + ev.location + "' is not on the map");
        continue;
      }
      bool bad_tag = false;
      for (size_t t = 5; t < tok.size(); ++t) {
        if (!is_tag(tok[t])) {
          err(ln, "bad_tag", "activity '" + tok[t] + "' must be a lowercase identifier");
          bad_tag = true;
          break;
        }
        ev.activities.insert(tok[t]);
      }
      if (bad_tag) continue;
    } else if (kind == "set_objects" && tok.size() >= 5) {
      ev.kind = TraceEvent::Kind::SetObjects;
      ev.location = tok[3];
      if (!map.has_location(ev.location)) {
        err(ln, "unknown_location", "'" + ev.location + "' is not on the map");
        continue;
      }
      bool bad = false;
      for (size_t t = 4; t < tok.size(); ++t) {
        const std::string& d = tok[t];
        if (d.size() < 2 || (d[0] != '+' && d[0] != '-') || !is_tag(d.substr(1))) {
          err(ln, "bad_tag", "object change '" + d + "' must be +tag or -tag");
          bad = true;
          break;
        }
        ev.object_deltas.emplace_back(d[0] == '+', d.substr(1));
      }
      if (bad) continue;
    } else if (kind == "checkin" && tok.size() == 4) {
      ev.kind = TraceEvent::Kind::Checkin;
      ev.member = tok[3];
      if (!find_member(plan.roster, ev.member)) {
        err(ln, "unknown_member", "'" + ev.member + "' is not in the plan roster");
        continue;
      }
    } else if (kind == "privacy" && tok.size() >= 4) {
      ev.kind = TraceEvent::Kind::Privacy;
      if (tok[3] == "off" && tok.size() == 4) {
        ev.privacy = TraceEvent::PrivacyKind::Off;
      } else if (tok[3] == "on" && tok.size() == 5 && tok[4] == "rest_of_day") {
        ev.privacy = TraceEvent::PrivacyKind::OnRestOfDay;
      } else if (tok[3] == "on" && tok.size() == 5) {
        auto mins = parse_int(tok[4], 1, 1000000);
        if (!mins) {
          err(ln, "syntax_error", "privacy duration must be an integer >= 1");
          continue;
        }
        ev.privacy = TraceEvent::PrivacyKind::OnForMinutes;
        ev.privacy_minutes = *mins;
      } else {
        err(ln, "syntax_error", "privacy takes 'on <minutes>', 'on rest_of_day', or 'off'");
        continue;
      }
    } else if (kind == "edge" && tok.size() == 6) {
      ev.kind = TraceEvent::Kind::Edge;
      ev.edge_a = tok[3];
      ev.edge_b = tok[4];
      if (!known_edges.count(edge_key(ev.edge_a, ev.edge_b))) {
        err(ln, "unknown_edge", "no edge between '" + ev.edge_a + "' and '" + ev.edge_b + "'");
        continue;
      }
      if (tok[5] == "open")
        ev.edge_open = true;
      else if (tok[5] == "closed")
        ev.edge_open = false;
      else {
        err(ln, "syntax_error", "edge state must be 'open' or 'closed'");
        continue;
      }
    } else if (kind == "rescue" && tok.size() == 3) {
      ev.kind = TraceEvent::Kind::Rescue;
    } else {
      err(ln, "syntax_error", "unrecognized trace event: " + lines[i].text);
      continue;
    }

    if (ev.time.abs() < prev_abs) {
      err(ln, "unsorted_events", "event times must be nondecreasing");
      continue;
    }
    prev_abs = ev.time.abs();
    trace.events.push_back(std::move(ev));
  }

  sort_diagnostics(diags);
  if (!has_errors(diags)) result.value = std::move(trace);
  return result;
}

std::string serialize_trace(const Trace& t) {
  std::string out = "trace v1\n";
  for (const auto& ev : t.events) {
    out += "d" + std::to_string(ev.time.day) + " " + format_clock(ev.time.minute) + " ";
    switch (ev.kind) {
      case TraceEvent::Kind::Move:
        out += "move " + ev.member + " " + ev.location;
        for (const auto& a : ev.activities) out += " " + a;
        break;
      case TraceEvent::Kind::SetObjects:
        out += "set_objects " + ev.location;
        for (const auto& [add, tag] : ev.object_deltas) out += std::string(" ") + (add ? "+" : "-") + tag;
        break;
      case TraceEvent::Kind::Checkin:
        out += "checkin " + ev.member;
        break;
      case TraceEvent::Kind::Privacy:
        if (ev.privacy == TraceEvent::PrivacyKind::Off)
          out += "privacy off";
        else if (ev.privacy == TraceEvent::PrivacyKind::OnRestOfDay)
          out += "privacy on rest_of_day";
        else
          out += "privacy on " + std::to_string(ev.privacy_minutes);
        break;
      case TraceEvent::Kind::Edge:
        out += "edge " + ev.edge_a + " " + ev.edge_b + (ev.edge_open ? " open" : " closed");
        break;
      case TraceEvent::Kind::Rescue:
        out += "rescue";
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace rsent
