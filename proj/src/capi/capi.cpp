#include "routine_sentinel.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/diagnostics.hpp"
#include "core/homemap.hpp"
#include "core/oracle.hpp"
#include "core/plan.hpp"
#include "core/report.hpp"
#include "core/sim.hpp"
#include "core/trace.hpp"

using namespace rsent;

struct rs_map {
  HomeMap map;
};
struct rs_plan {
  Plan plan;
};
struct rs_trace {
  Trace trace;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

std::string render_diags(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    out += format_diagnostic(d);
    out += '\n';
  }
  return out;
}

// Grammar-level failures and semantic failures rank differently so callers
// (and the CLI exit code) can tell "fix the file" from "fix the contents".
int status_of(const std::vector<Diagnostic>& ds) {
  bool any_error = false;
  for (const auto& d : ds) {
    if (d.severity != Severity::Error) continue;
    any_error = true;
    if (d.code == "syntax_error") return RS_E_SYNTAX;
  }
  return any_error ? RS_E_VALIDATION : RS_OK;
}

}  // namespace

extern "C" {

int rs_map_parse(const char* text, rs_map** out, char** diags_out) {
  if (!text || !out) return RS_E_ARGUMENT;
  *out = nullptr;
  try {
    auto parsed = parse_map(text);
    set_out(diags_out, render_diags(parsed.diags));
    int status = status_of(parsed.diags);
    if (status != RS_OK || !parsed.value) return status == RS_OK ? RS_E_VALIDATION : status;
    *out = new rs_map{std::move(*parsed.value)};
    return RS_OK;
  } catch (...) {
    return RS_E_INTERNAL;
  }
}

void rs_map_free(rs_map* map) { delete map; }

int rs_plan_parse(const char* text, rs_plan** out, char** diags_out) {
  if (!text || !out) return RS_E_ARGUMENT;
  *out = nullptr;
  try {
    auto parsed = parse_plan(text);
    set_out(diags_out, render_diags(parsed.diags));
    int status = status_of(parsed.diags);
    if (status != RS_OK || !parsed.value) return status == RS_OK ? RS_E_VALIDATION : status;
    *out = new rs_plan{std::move(*parsed.value)};
    return RS_OK;
  } catch (...) {
    return RS_E_INTERNAL;
  }
}

void rs_plan_free(rs_plan* plan) { delete plan; }

int rs_plan_validate(const rs_plan* plan, const rs_map* map, char** diags_out) {
  if (!plan || !map) return RS_E_ARGUMENT;
  try {
    std::vector<Diagnostic> diags;
    validate_plan(plan->plan, map->map, diags);
    set_out(diags_out, render_diags(diags));
    return status_of(diags);
  } catch (...) {
    return RS_E_INTERNAL;
  }
}

int rs_plan_serialize(const rs_plan* plan, char** text_out) {
  if (!plan || !text_out) return RS_E_ARGUMENT;
  try {
    *text_out = dup_string(serialize_plan(plan->plan));
    return *text_out ? RS_OK : RS_E_INTERNAL;
  } catch (...) {
    return RS_E_INTERNAL;
  }
}

int rs_trace_parse(const char* text, const rs_plan* plan, const rs_map* map, rs_trace** out,
                   char** diags_out) {
  if (!text || !plan || !map || !out) return RS_E_ARGUMENT;
  *out = nullptr;
  try {
    auto parsed = parse_trace(text, plan->plan, map->map);
    set_out(diags_out, render_diags(parsed.diags));
    int status = status_of(parsed.diags);
    if (status != RS_OK || !parsed.value) return status == RS_OK ? RS_E_VALIDATION : status;
    *out = new rs_trace{std::move(*parsed.value)};
    return RS_OK;
  } catch (...) {
    return RS_E_INTERNAL;
  }
}

void rs_trace_free(rs_trace* trace) { delete trace; }

void rs_sim_config_init(rs_sim_config* cfg) {
  if (!cfg) return;
  SimConfig d;
  cfg->seed = d.seed;
  cfg->days = d.days;
  cfg->omniscient = 0;
  cfg->p_person_swap = d.error.p_person_swap;
  cfg->p_activity_fp = d.error.p_activity_fp;
  cfg->p_activity_fn = d.error.p_activity_fn;
  cfg->p_object_flip = d.error.p_object_flip;
  cfg->p_dock = d.p_dock;
  cfg->battery_capacity = d.battery_capacity;
  cfg->drain_moving = d.drain_moving;
  cfg->drain_idle = d.drain_idle;
  cfg->charge_rate = d.charge_rate;
  cfg->max_gap = d.max_gap;
  cfg->seek_timeout = d.seek_timeout;
  cfg->privacy_lead = d.privacy_lead;
}

int rs_simulate(const rs_plan* plan, const rs_map* map, const rs_trace* trace,
                const rs_sim_config* cfg, char** log_out) {
  if (!plan || !map || !trace || !cfg || !log_out) return RS_E_ARGUMENT;
  if (cfg->days < 1) return RS_E_ARGUMENT;
  for (double p : {cfg->p_person_swap, cfg->p_activity_fp, cfg->p_activity_fn, cfg->p_object_flip,
                   cfg->p_dock})
    if (p < 0.0 || p > 1.0) return RS_E_ARGUMENT;
  if (cfg->battery_capacity < 1 || cfg->drain_moving < 0 || cfg->drain_idle < 0 ||
      cfg->charge_rate < 0 || cfg->max_gap < 0 || cfg->seek_timeout < 1 || cfg->privacy_lead < 0)
    return RS_E_ARGUMENT;
  try {
    SimConfig sc;
    sc.seed = cfg->seed;
    sc.days = cfg->days;
    sc.mode = cfg->omniscient ? SimMode::Omniscient : SimMode::Realistic;
    sc.error = {cfg->p_person_swap, cfg->p_activity_fp, cfg->p_activity_fn, cfg->p_object_flip};
    sc.p_dock = cfg->p_dock;
    sc.battery_capacity = cfg->battery_capacity;
    sc.drain_moving = cfg->drain_moving;
    sc.drain_idle = cfg->drain_idle;
    sc.charge_rate = cfg->charge_rate;
    sc.max_gap = cfg->max_gap;
    sc.seek_timeout = cfg->seek_timeout;
    sc.privacy_lead = cfg->privacy_lead;
    EventLog log = simulate(plan->plan, map->map, trace->trace, sc);
    *log_out = dup_string(log.to_text());
    return *log_out ? RS_OK : RS_E_INTERNAL;
  } catch (...) {
    return RS_E_INTERNAL;
  }
}

int rs_oracle(const rs_plan* plan, const rs_trace* trace, int days, char** deliveries_out) {
  if (!plan || !trace || !deliveries_out || days < 1) return RS_E_ARGUMENT;
  try {
    auto ds = oracle_deliveries(plan->plan, trace->trace, days);
    *deliveries_out = dup_string(format_oracle(ds));
    return *deliveries_out ? RS_OK : RS_E_INTERNAL;
  } catch (...) {
    return RS_E_INTERNAL;
  }
}

int rs_diff(const char* log_text, const char* oracle_text, char** diff_out, char** diags_out) {
  if (!log_text || !oracle_text || !diff_out) return RS_E_ARGUMENT;
  try {
    auto log = parse_log(log_text);
    auto oracle = parse_oracle(oracle_text);
    std::vector<Diagnostic> all = log.diags;
    all.insert(all.end(), oracle.diags.begin(), oracle.diags.end());
    set_out(diags_out, render_diags(all));
    if (!log.value || !oracle.value) return RS_E_SYNTAX;
    auto diff = diff_deliveries(*log.value, *oracle.value);
    std::string text;
    for (const auto& m : diff.missing) text += "missing: " + m + "\n";
    for (const auto& e : diff.extra) text += "extra: " + e + "\n";
    *diff_out = dup_string(text);
    return *diff_out ? RS_OK : RS_E_INTERNAL;
  } catch (...) {
    return RS_E_INTERNAL;
  }
}

int rs_report(const char* log_text, const char* oracle_text, char** report_out, char** diags_out) {
  if (!log_text || !report_out) return RS_E_ARGUMENT;
  try {
    auto log = parse_log(log_text);
    std::vector<Diagnostic> all = log.diags;
    std::optional<std::vector<OracleDelivery>> oracle;
    if (oracle_text) {
      auto parsed = parse_oracle(oracle_text);
      all.insert(all.end(), parsed.diags.begin(), parsed.diags.end());
      if (parsed.value) oracle = std::move(*parsed.value);
    }
    set_out(diags_out, render_diags(all));
    if (!log.value || (oracle_text && !oracle)) return RS_E_SYNTAX;
    Report rep = build_report(*log.value, oracle ? &*oracle : nullptr);
    *report_out = dup_string(print_report(rep));
    return *report_out ? RS_OK : RS_E_INTERNAL;
  } catch (...) {
    return RS_E_INTERNAL;
  }
}

void rs_string_free(char* s) { std::free(s); }

}  // extern "C"
