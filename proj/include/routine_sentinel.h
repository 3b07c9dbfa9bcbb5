/* routine_sentinel.h - C interface to the household reminder engine.
 *
 * All functions return a status code:
 *   RS_OK            success
 *   RS_E_VALIDATION  input parsed but is semantically unusable
 *   RS_E_SYNTAX      input text is malformed
 *   RS_E_ARGUMENT    bad call (null pointer, nonsense config)
 *   RS_E_INTERNAL    unexpected failure inside the library
 *
 * Every char* an rs_ function hands out is heap-allocated and owned by the
 * caller; release it with rs_string_free.  Handles are opaque; release them
 * with their matching _free function.  NULL out-parameters are allowed
 * everywhere a result is optional.
 */
#ifndef ROUTINE_SENTINEL_H
#define ROUTINE_SENTINEL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RS_OK 0
#define RS_E_VALIDATION 1
#define RS_E_SYNTAX 2
#define RS_E_ARGUMENT 3
#define RS_E_INTERNAL 4

typedef struct rs_map rs_map;
typedef struct rs_plan rs_plan;
typedef struct rs_trace rs_trace;

/* Parsing.  On failure *out stays NULL and *diags_out (when non-NULL) gets a
 * newline-separated list of "LINE:CODE:message" findings.  On success
 * *diags_out may still carry warnings. */
int rs_map_parse(const char* text, rs_map** out, char** diags_out);
void rs_map_free(rs_map* map);

int rs_plan_parse(const char* text, rs_plan** out, char** diags_out);
void rs_plan_free(rs_plan* plan);

/* Cross-checks a parsed plan against a map: unknown rooms or members,
 * degenerate windows, unreachable pacing. */
int rs_plan_validate(const rs_plan* plan, const rs_map* map, char** diags_out);

/* Canonical text form; parsing it again reproduces the same plan. */
int rs_plan_serialize(const rs_plan* plan, char** text_out);

int rs_trace_parse(const char* text, const rs_plan* plan, const rs_map* map, rs_trace** out,
                   char** diags_out);
void rs_trace_free(rs_trace* trace);

typedef struct rs_sim_config {
  uint64_t seed;
  int days;
  int omniscient; /* 0 = realistic robot, 1 = perfect everywhere-observation */

  /* Perception error rates, each in [0,1].  Ignored when omniscient. */
  double p_person_swap;
  double p_activity_fp;
  double p_activity_fn;
  double p_object_flip;

  double p_dock; /* chance a single docking attempt succeeds */
  int battery_capacity;
  int drain_moving;
  int drain_idle;
  int charge_rate;

  int max_gap;      /* unobserved minutes a condition streak survives */
  int seek_timeout; /* minutes a person-search may take */
  int privacy_lead; /* leave privacy this many minutes before the next window */
} rs_sim_config;

/* Fills in the documented defaults (realistic mode, seed 0, one day). */
void rs_sim_config_init(rs_sim_config* cfg);

/* Runs the simulation; *log_out receives the full event log text.  The same
 * inputs and seed always produce byte-identical text. */
int rs_simulate(const rs_plan* plan, const rs_map* map, const rs_trace* trace,
                const rs_sim_config* cfg, char** log_out);

/* Reference delivery computation (perfect observation, no robot body).
 * *deliveries_out receives one line per delivery. */
int rs_oracle(const rs_plan* plan, const rs_trace* trace, int days, char** deliveries_out);

/* Compares a simulation log against reference deliveries.  *diff_out is ""
 * when they agree, otherwise "missing: ..." / "extra: ..." lines.  Returns
 * RS_OK even when they differ; inspect *diff_out. */
int rs_diff(const char* log_text, const char* oracle_text, char** diff_out, char** diags_out);

/* Aggregates a log into the stable k=v report form.  oracle_text may be NULL;
 * when given, the report also lists missed (reminder, day) windows. */
int rs_report(const char* log_text, const char* oracle_text, char** report_out, char** diags_out);

void rs_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ROUTINE_SENTINEL_H */
