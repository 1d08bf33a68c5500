#pragma once

#include "deaorient/core.hpp"
#include "deaorient/scores.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace deaorient {

/// A technology read from CSV together with its variable names.
struct Dataset {
  Technology tech;
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;
};

/// Header `dmu,i:<name>...,o:<name>...`; inputs and outputs keep their
/// column order. Throws DataError with the offending line number.
Dataset read_csv(std::istream& in);
Dataset read_csv_file(const std::string& path);

/// "d1,...,dm:d1,...,ds". Throws DataError on bad syntax or wrong counts.
Orientation parse_orientation(std::string_view text, Index m, Index s);

/// "g1,...,gm:g1,...,gs" where "-" marks an uncontrollable variable.
CostGradient parse_cost_gradient(std::string_view text, Index m, Index s);

/// "lo", "qo" or "both".
std::vector<Model> parse_models(const std::string& text);

struct RunConfig {
  std::vector<Model> models{Model::Lo};
  std::string orient;         // inline spec or path; empty means all ones
  std::string cost_gradient;  // alternative to `orient`
  GradientNormalization cost_normalization = GradientNormalization::Count;
  ReturnsToScale rts;
  bool second_stage = true;
  ZeroOutputPolicy zero_output_policy = ZeroOutputPolicy::Potential;
  std::map<std::string, ZeroOutputPolicy> zero_output_overrides;  // by output name
  double zero_replacement_factor = 0.1;
  bool qo_force_bisection = false;
  bool qo_cross_check = false;
  double bisection_tol = 1e-9;
  double agreement_tol = 1e-7;
  int round = 6;
  int threads = 0;

  EvalOptions eval_options() const;
};

/// Applies the keys of a JSON config object on top of `base`.
/// Throws DataError on unknown keys or wrong types.
RunConfig apply_config_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Worker count: `requested` if positive, otherwise the hardware
/// concurrency; DEAORIENT_THREADS (when positive) caps the result.
unsigned resolve_threads(int requested);

struct DmuResult {
  std::string name;
  std::optional<Evaluation> eval;
  enum class Failure { None, Data, Solver } failure = Failure::None;
  std::string error;
};

struct ModelRun {
  Model model;
  std::vector<DmuResult> results;  // input order
};

struct Report {
  Dataset data;  // after zero preprocessing
  ZeroAdjustmentLog zero_log;
  Orientation orientation;  // as configured, before per-subject zeroing
  double beta_cost_multiplier = 1.0;
  bool from_cost_gradient = false;
  RunConfig config;
  std::vector<ModelRun> runs;

  bool has_data_failure() const;
  bool has_solver_failure() const;
};

/// Preprocesses zeros, resolves the orientation and evaluates every DMU with
/// every configured model, in parallel. Per-DMU failures are captured in
/// the results. Throws DataError for invalid data or configuration.
Report run_batch(const Dataset& data, const RunConfig& config);

/// Fixed-point text with `digits` decimals; negative zero prints as zero.
std::string format_fixed(double v, int digits);

nlohmann::json to_json(const Report& report);
void write_csv(std::ostream& out, const Report& report, int digits);
void write_table(std::ostream& out, const Report& report, int digits);

struct BarRow {
  std::string variable;
  std::string kind;  // "contraction" or "dilation"
  double orientation = 0.0;
  double factor = 1.0;          // theta or phi
  double inverse_factor = 1.0;  // 1 / factor
  double relative_slack = 0.0;  // tau
};

/// One row per variable, inputs then outputs.
std::vector<BarRow> emit_bars(const Evaluation& eval, const std::vector<std::string>& input_names,
                              const std::vector<std::string>& output_names);
void write_bars_csv(std::ostream& out, const std::string& model, const std::string& dmu,
                    const std::vector<BarRow>& rows, int digits, bool header);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct SelfCheckOptions {
  int monotonicity_samples = 100;
  std::uint64_t seed = 20240601;
  bool corrupt_comparator = false;
};

/// Invariant and oracle checks on a dataset under the configured
/// orientation and returns to scale.
std::vector<CheckResult> self_check(const Dataset& data, const RunConfig& config, const SelfCheckOptions& opts = {});

}  // namespace deaorient
