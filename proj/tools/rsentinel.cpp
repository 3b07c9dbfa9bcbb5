// rsentinel - command-line front end for the household reminder engine.
// Talks to the library strictly through the public C interface.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "routine_sentinel.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;  // inputs readable but unusable, or diff found
constexpr int kExitError = 2;    // unreadable/malformed input, I/O failure, bad usage

int exit_code_for(int rs_status) {
  switch (rs_status) {
    case RS_OK:
      return kExitOk;
    case RS_E_VALIDATION:
      return kExitInvalid;
    default:
      return kExitError;
  }
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

void print_diags(char* diags) {
  if (diags && *diags) std::cerr << diags;
  rs_string_free(diags);
}

struct Owned {
  char* s = nullptr;
  ~Owned() { rs_string_free(s); }
};

// Loads and parses the three input files; prints findings to stderr.
// Returns the worst exit code seen (0 = everything usable).
struct Inputs {
  rs_map* map = nullptr;
  rs_plan* plan = nullptr;
  rs_trace* trace = nullptr;

  ~Inputs() {
    rs_trace_free(trace);
    rs_plan_free(plan);
    rs_map_free(map);
  }

  int load(const std::string& plan_path, const std::string& map_path,
           const std::string& trace_path, bool need_trace) {
    auto map_text = read_file(map_path);
    if (!map_text) {
      std::cerr << "error: cannot read " << map_path << "\n";
      return kExitError;
    }
    char* diags = nullptr;
    int status = rs_map_parse(map_text->c_str(), &map, &diags);
    print_diags(diags);
    if (status != RS_OK) return exit_code_for(status);

    auto plan_text = read_file(plan_path);
    if (!plan_text) {
      std::cerr << "error: cannot read " << plan_path << "\n";
      return kExitError;
    }
    diags = nullptr;
    status = rs_plan_parse(plan_text->c_str(), &plan, &diags);
    print_diags(diags);
    if (status != RS_OK) return exit_code_for(status);

    diags = nullptr;
    status = rs_plan_validate(plan, map, &diags);
    print_diags(diags);
    if (status != RS_OK) return exit_code_for(status);

    if (!need_trace) return kExitOk;
    auto trace_text = read_file(trace_path);
    if (!trace_text) {
      std::cerr << "error: cannot read " << trace_path << "\n";
      return kExitError;
    }
    diags = nullptr;
    status = rs_trace_parse(trace_text->c_str(), plan, map, &trace, &diags);
    print_diags(diags);
    return exit_code_for(status);
  }
};

// Pulls one numeric field out of report text ("key=value" lines).
long report_field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + "=", 0) == 0) return std::strtol(line.c_str() + key.size() + 1, nullptr, 10);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rsentinel - contextual household reminder robot simulator"};
  app.require_subcommand(1);

  std::string plan_path, map_path, trace_path, log_path, oracle_path, out_path;

  // --- validate ---------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "check plan/map/trace files");
  validate->add_option("--plan", plan_path, "plan file")->required();
  validate->add_option("--map", map_path, "map file")->required();
  validate->add_option("--trace", trace_path, "trace file (optional)");
  validate->callback([&]() {
    Inputs in;
    int code = in.load(plan_path, map_path, trace_path, !trace_path.empty());
    if (code == kExitOk) std::cout << "ok\n";
    std::exit(code);
  });

  // --- simulate ---------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "run the household simulation");
  rs_sim_config cfg;
  rs_sim_config_init(&cfg);
  int days = cfg.days;
  std::string mode = "realistic";
  std::uint64_t seed = cfg.seed;
  simulate->add_option("--plan", plan_path, "plan file")->required();
  simulate->add_option("--map", map_path, "map file")->required();
  simulate->add_option("--trace", trace_path, "trace file")->required();
  simulate->add_option("--days", days, "days to simulate");
  simulate->add_option("--seed", seed, "random seed (ROUTINE_SENTINEL_SEED overrides)");
  simulate->add_option("--mode", mode, "realistic|omniscient")
      ->check(CLI::IsMember({"realistic", "omniscient"}));
  simulate->add_option("--out", out_path, "write the event log here (default: stdout)");
  simulate->add_option("--p-swap", cfg.p_person_swap, "person misidentification rate");
  simulate->add_option("--p-activity-fp", cfg.p_activity_fp, "activity false-positive rate");
  simulate->add_option("--p-activity-fn", cfg.p_activity_fn, "activity false-negative rate");
  simulate->add_option("--p-object-flip", cfg.p_object_flip, "object misread rate");
  simulate->add_option("--p-dock", cfg.p_dock, "docking attempt success chance");
  simulate->add_option("--battery-capacity", cfg.battery_capacity, "battery capacity");
  simulate->add_option("--drain-moving", cfg.drain_moving, "battery per moving minute");
  simulate->add_option("--drain-idle", cfg.drain_idle, "battery per idle minute");
  simulate->add_option("--charge-rate", cfg.charge_rate, "battery per docked minute");
  simulate->add_option("--max-gap", cfg.max_gap, "unobserved minutes a streak survives");
  simulate->add_option("--seek-timeout", cfg.seek_timeout, "minutes a person-search may take");
  simulate->add_option("--privacy-lead", cfg.privacy_lead, "minutes before next window to wake");
  simulate->callback([&]() {
    Inputs in;
    int code = in.load(plan_path, map_path, trace_path, true);
    if (code != kExitOk) std::exit(code);

    cfg.days = days;
    cfg.omniscient = mode == "omniscient" ? 1 : 0;
    cfg.seed = seed;
    if (const char* env = std::getenv("ROUTINE_SENTINEL_SEED"))
      cfg.seed = std::strtoull(env, nullptr, 10);

    Owned log;
    int status = rs_simulate(in.plan, in.map, in.trace, &cfg, &log.s);
    if (status != RS_OK) {
      std::cerr << "error: simulation failed\n";
      std::exit(exit_code_for(status));
    }

    Owned report;
    if (rs_report(log.s, nullptr, &report.s, nullptr) != RS_OK) {
      std::cerr << "error: malformed log\n";
      std::exit(kExitError);
    }
    std::string rep(report.s);

    if (!out_path.empty()) {
      if (!write_file(out_path, log.s)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        std::exit(kExitError);
      }
    } else {
      std::cout << log.s;
    }

    std::ostream& summary_to = out_path.empty() ? std::cerr : std::cout;
    summary_to << "simulated days=" << days << " deliveries=" << report_field(rep, "deliveries")
               << " proactive=" << report_field(rep, "proactive")
               << " seek=" << report_field(rep, "seek")
               << " checkin=" << report_field(rep, "checkin")
               << " suppressed=" << report_field(rep, "suppressed")
               << " log=" << (out_path.empty() ? "-" : out_path) << "\n";
    std::exit(kExitOk);
  });

  // --- oracle -----------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "reference delivery computation");
  int oracle_days = 1;
  oracle->add_option("--plan", plan_path, "plan file")->required();
  oracle->add_option("--map", map_path, "map file")->required();
  oracle->add_option("--trace", trace_path, "trace file")->required();
  oracle->add_option("--days", oracle_days, "days to compute");
  oracle->add_option("--out", out_path, "write deliveries here (default: stdout)");
  oracle->callback([&]() {
    Inputs in;
    int code = in.load(plan_path, map_path, trace_path, true);
    if (code != kExitOk) std::exit(code);
    Owned text;
    int status = rs_oracle(in.plan, in.trace, oracle_days, &text.s);
    if (status != RS_OK) {
      std::cerr << "error: reference computation failed\n";
      std::exit(exit_code_for(status));
    }
    if (!out_path.empty()) {
      if (!write_file(out_path, text.s)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        std::exit(kExitError);
      }
    } else {
      std::cout << text.s;
    }
    std::exit(kExitOk);
  });

  // --- diff -------------------------------------------------------------
  auto* diff = app.add_subcommand("diff", "compare a log against reference deliveries");
  diff->add_option("--log", log_path, "simulation log file")->required();
  diff->add_option("--oracle", oracle_path, "reference deliveries file")->required();
  diff->callback([&]() {
    auto log_text = read_file(log_path);
    auto oracle_text = read_file(oracle_path);
    if (!log_text || !oracle_text) {
      std::cerr << "error: cannot read input\n";
      std::exit(kExitError);
    }
    Owned out;
    char* diags = nullptr;
    int status = rs_diff(log_text->c_str(), oracle_text->c_str(), &out.s, &diags);
    print_diags(diags);
    if (status != RS_OK) std::exit(exit_code_for(status));
    if (out.s && *out.s) {
      std::cout << out.s;
      std::exit(kExitInvalid);
    }
    std::cout << "match\n";
    std::exit(kExitOk);
  });

  // --- report -----------------------------------------------------------
  auto* report = app.add_subcommand("report", "summarize a simulation log");
  report->add_option("--log", log_path, "simulation log file")->required();
  report->add_option("--oracle", oracle_path, "reference deliveries file (optional)");
  report->callback([&]() {
    auto log_text = read_file(log_path);
    if (!log_text) {
      std::cerr << "error: cannot read " << log_path << "\n";
      std::exit(kExitError);
    }
    std::optional<std::string> oracle_text;
    if (!oracle_path.empty()) {
      oracle_text = read_file(oracle_path);
      if (!oracle_text) {
        std::cerr << "error: cannot read " << oracle_path << "\n";
        std::exit(kExitError);
      }
    }
    Owned out;
    char* diags = nullptr;
    int status = rs_report(log_text->c_str(), oracle_text ? oracle_text->c_str() : nullptr, &out.s,
                           &diags);
    print_diags(diags);
    if (status != RS_OK) std::exit(exit_code_for(status));
    std::cout << out.s;
    std::exit(kExitOk);
  });

  CLI11_PARSE(app, argc, argv);
  return kExitOk;
}
