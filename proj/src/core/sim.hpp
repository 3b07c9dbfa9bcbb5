#pragma once

#include <cstdint>

#include "engine.hpp"
#include "eventlog.hpp"
#include "homemap.hpp"
#include "perception.hpp"
#include "plan.hpp"
#include "trace.hpp"

namespace rsent {

enum class SimMode { Realistic, Omniscient };

struct SimConfig {
  uint64_t seed = 0;
  int days = 1;
  SimMode mode = SimMode::Realistic;

  ErrorModel error;          // perception error rates (ignored when omniscient)
  double p_dock = 1.0;       // chance one docking attempt succeeds
  int battery_capacity = 240;
  int drain_moving = 2;      // battery per minute while driving
  int drain_idle = 1;        // battery per minute awake but parked
  int charge_rate = 4;       // battery per minute on the dock

  int max_gap = 5;
  int seek_timeout = 10;
  int privacy_lead = 15;
};

// Runs the whole household for `days` simulated days, one-minute ticks.
// Identical inputs and seed give a byte-identical log.
//
// Realistic mode: the robot patrols, drives real routes, spends battery,
// and sees the world through the two-pass perception model.  Omniscient
// mode: every watched room is observed every minute with perfect sight and
// instant motion — the configuration whose deliveries must match the
// reference computation exactly.
EventLog simulate(const Plan& plan, const HomeMap& map, const Trace& trace, const SimConfig& cfg);

}  // namespace rsent
