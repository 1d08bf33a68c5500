#include "deaorient/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace deaorient;

namespace {

struct CommonFlags {
  std::string data;
  std::string config;
  std::string model;
  std::string orient;
  std::string cost_gradient;
  std::string cost_normalization;
  std::string rts;
  std::string second_stage;
  std::vector<std::string> zero_policy;
  bool qo_force_bisection = false;
  bool qo_cross_check = false;
  int round = 6;
  int threads = 0;
  std::string out;

  CLI::Option* model_opt = nullptr;
  CLI::Option* orient_opt = nullptr;
  CLI::Option* cost_opt = nullptr;
  CLI::Option* norm_opt = nullptr;
  CLI::Option* rts_opt = nullptr;
  CLI::Option* stage_opt = nullptr;
  CLI::Option* round_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--data", f.data, "CSV with header dmu,i:<name>...,o:<name>...")->required();
  cmd->add_option("--config", f.config, "JSON run configuration; flags override it");
  f.model_opt = cmd->add_option("--model", f.model, "lo, qo or both");
  f.orient_opt = cmd->add_option("--orient", f.orient, "d1,...,dm:d1,...,ds or a file holding that text");
  f.cost_opt = cmd->add_option("--cost-gradient", f.cost_gradient, "g1,...,gm:g1,...,gs; '-' marks uncontrollable");
  f.norm_opt = cmd->add_option("--cost-normalization", f.cost_normalization, "count or inf_norm");
  f.rts_opt = cmd->add_option("--rts", f.rts, "crs, vrs, nirs, ndrs or grs:L:U");
  f.stage_opt = cmd->add_option("--second-stage", f.second_stage, "on or off");
  cmd->add_option("--zero-output-policy", f.zero_policy, "potential|impossible, or <output>=<policy>");
  cmd->add_flag("--qo-force-bisection", f.qo_force_bisection, "never use the closed-form QO route");
  cmd->add_flag("--qo-cross-check", f.qo_cross_check, "run both QO routes and require agreement");
  f.round_opt = cmd->add_option("--round", f.round, "decimals in tables and CSV")->check(CLI::Range(0, 17));
  f.threads_opt = cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
  cmd->add_option("--out", f.out, "output path prefix");
}

RunConfig build_config(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config.empty()) cfg = load_config_file(f.config, cfg);
  nlohmann::json flags = nlohmann::json::object();
  if (f.model_opt->count()) flags["model"] = f.model;
  if (f.orient_opt->count()) flags["orient"] = f.orient;
  if (f.cost_opt->count()) flags["cost_gradient"] = f.cost_gradient;
  if (f.norm_opt->count()) flags["cost_normalization"] = f.cost_normalization;
  if (f.rts_opt->count()) flags["rts"] = f.rts;
  if (f.stage_opt->count()) flags["second_stage"] = f.second_stage;
  if (f.round_opt->count()) flags["round"] = f.round;
  if (f.threads_opt->count()) flags["threads"] = f.threads;
  if (f.qo_force_bisection) flags["qo_force_bisection"] = true;
  if (f.qo_cross_check) flags["qo_cross_check"] = true;
  if (!f.zero_policy.empty()) {
    nlohmann::json zp = nlohmann::json::object();
    for (const auto& item : f.zero_policy) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        zp["default"] = item;
      } else {
        zp[item.substr(0, eq)] = item.substr(eq + 1);
      }
    }
    flags["zero_output_policy"] = zp;
  }
  if (f.orient_opt->count() && !f.cost_opt->count()) cfg.cost_gradient.clear();
  if (f.cost_opt->count() && !f.orient_opt->count()) cfg.orient.clear();
  return apply_config_json(flags, cfg);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

void report_failures(const Report& report) {
  for (const auto& run : report.runs) {
    for (const auto& r : run.results) {
      if (!r.eval) std::cerr << to_string(run.model) << " " << r.name << ": " << r.error << "\n";
    }
  }
}

int exit_code_of(const Report& report) {
  if (report.has_data_failure()) return 1;
  if (report.has_solver_failure()) return 2;
  return 0;
}

int cmd_eval(const CommonFlags& f) {
  const Dataset data = read_csv_file(f.data);
  const RunConfig cfg = build_config(f);
  const Report report = run_batch(data, cfg);
  write_table(std::cout, report, cfg.round);
  if (!f.out.empty()) {
    open_out(f.out + ".json") << to_json(report).dump(2) << "\n";
    auto csv = open_out(f.out + ".csv");
    write_csv(csv, report, cfg.round);
  }
  report_failures(report);
  return exit_code_of(report);
}

int cmd_bars(const CommonFlags& f, const std::string& dmu) {
  const Dataset data = read_csv_file(f.data);
  const RunConfig cfg = build_config(f);
  const Report report = run_batch(data, cfg);
  std::ofstream file;
  if (!f.out.empty()) file = open_out(f.out + ".bars.csv");
  std::ostream& out = f.out.empty() ? std::cout : file;
  bool header = true;
  bool found = dmu.empty();
  for (const auto& run : report.runs) {
    for (const auto& r : run.results) {
      if (!dmu.empty() && r.name != dmu) continue;
      found = true;
      if (!r.eval) continue;
      write_bars_csv(out, to_string(run.model), r.name,
                     emit_bars(*r.eval, report.data.input_names, report.data.output_names), cfg.round, header);
      header = false;
    }
  }
  if (!found) throw DataError("no DMU named '" + dmu + "'");
  report_failures(report);
  return exit_code_of(report);
}

int cmd_self_check(const CommonFlags& f, const SelfCheckOptions& opts) {
  const Dataset data = read_csv_file(f.data);
  const RunConfig cfg = build_config(f);
  const auto results = self_check(data, cfg, opts);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.passed;
  }
  if (opts.corrupt_comparator) std::cout << "note: comparator deliberately inverted, failures expected\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized oriented DEA: linear and quadratic oriented models"};
  app.require_subcommand(1);

  CommonFlags eval_flags;
  CLI::App* eval = app.add_subcommand("eval", "evaluate every DMU and write reports");
  add_common(eval, eval_flags);

  CommonFlags check_flags;
  SelfCheckOptions check_opts;
  CLI::App* check = app.add_subcommand("self-check", "run invariant and oracle checks on a dataset");
  add_common(check, check_flags);
  check->add_option("--samples", check_opts.monotonicity_samples, "dominated pairs per model");
  check->add_option("--seed", check_opts.seed, "sampling seed");
  check->add_flag("--corrupt-comparator", check_opts.corrupt_comparator, "invert the monotonicity comparator");

  CommonFlags bars_flags;
  std::string bars_dmu;
  CLI::App* bars = app.add_subcommand("bars", "contraction and dilation bar data");
  add_common(bars, bars_flags);
  bars->add_option("--dmu", bars_dmu, "only this DMU");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*eval) return cmd_eval(eval_flags);
    if (*check) return cmd_self_check(check_flags, check_opts);
    return cmd_bars(bars_flags, bars_dmu);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  }
}
