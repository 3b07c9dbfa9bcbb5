#pragma once

#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "domain.hpp"
#include "homemap.hpp"
#include "predicate.hpp"
#include "simtime.hpp"

namespace rsent {

enum class ActionKind { Speak, SeekThenSpeak };

struct ActionSpec {
  ActionKind kind = ActionKind::Speak;
  std::string seek_target;  // member to look for (SeekThenSpeak only)
  std::string text;         // what the robot says
};

// One configured reminder: who to tell, when, where to watch, what has to
// be true, what to do, and the pacing knobs.
struct ReminderSpec {
  std::string id;
  bool recipients_all = false;
  std::vector<std::string> recipients;  // sorted, unique; empty iff recipients_all
  TimeWindow window;
  std::vector<std::string> locations;  // rooms whose scenes can trigger it
  PredicatePtr predicate;
  ActionSpec action;
  int dwell_min = 0;    // condition must hold this many observed minutes
  int repeat_min = 60;  // minimum minutes between deliveries
  int daily_max = 1;    // deliveries allowed per day
};

struct Plan {
  std::string map_ref;  // file name the plan was written against (informational)
  Roster roster;
  std::vector<ReminderSpec> reminders;

  const ReminderSpec* find_reminder(const std::string& id) const {
    for (const auto& r : reminders)
      if (r.id == id) return &r;
    return nullptr;
  }

  // Recipient set with "all" expanded; sorted member ids.
  std::vector<std::string> resolved_recipients(const ReminderSpec& r) const;

  bool is_recipient(const ReminderSpec& r, const std::string& member) const;

  // Union of tags mentioned by any reminder predicate — what perception can
  // be asked about.
  std::set<std::string> referenced_activity_tags() const;
  std::set<std::string> referenced_object_tags() const;
};

// Syntax pass: builds the structure and reports line-level problems.
// Cross-checks against the map/roster live in validate_plan.
Parsed<Plan> parse_plan(const std::string& text);

// Semantic checks (unknown rooms/members, degenerate windows, pacing values,
// duplicate ids).  Appends to `diags`; errors mean the plan must not run.
void validate_plan(const Plan& plan, const HomeMap& map, std::vector<Diagnostic>& diags);

// Canonical text form; parse_plan(serialize_plan(p)) reproduces p exactly.
std::string serialize_plan(const Plan& plan);

bool plans_equal(const Plan& a, const Plan& b);

}  // namespace rsent
