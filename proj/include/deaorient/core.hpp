#pragma once

#include "deaorient/lp.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deaorient {

/// Bad input data or configuration; the CLI maps this to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The solver could not produce a result it can certify; exit code 2.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An (inputs, outputs) pair.
struct Activity {
  Vector x;
  Vector y;

  Index num_inputs() const { return x.size(); }
  Index num_outputs() const { return y.size(); }
  Activity scaled(double factor) const { return {factor * x, factor * y}; }
};

enum class RtsKind { Crs, Vrs, Nirs, Ndrs, Grs };

/// Returns-to-scale regime, i.e. the constraint on the sum of intensities.
struct ReturnsToScale {
  RtsKind kind = RtsKind::Crs;
  double lower = 0.0;        // GRS only
  double upper = kInfinity;  // GRS only

  static ReturnsToScale crs() { return {}; }
  static ReturnsToScale vrs() { return {RtsKind::Vrs}; }
  static ReturnsToScale nirs() { return {RtsKind::Nirs}; }
  static ReturnsToScale ndrs() { return {RtsKind::Ndrs}; }
  /// Requires 0 <= lower <= 1 <= upper; throws DataError otherwise.
  static ReturnsToScale grs(double lower, double upper);

  /// Accepts crs, vrs, nirs, ndrs and grs:L:U (case-insensitive).
  static ReturnsToScale parse(std::string_view text);
  std::string to_string() const;
};

/// Reference technology: column j of `inputs`/`outputs` is DMU j.
struct Technology {
  Matrix inputs;   // m x n
  Matrix outputs;  // s x n
  std::vector<std::string> names;
  ReturnsToScale rts;

  Technology() = default;
  Technology(Matrix x, Matrix y, ReturnsToScale r = {}, std::vector<std::string> labels = {});

  Index num_dmus() const { return inputs.cols(); }
  Index num_inputs() const { return inputs.rows(); }
  Index num_outputs() const { return outputs.rows(); }
  Activity activity(Index j) const { return {inputs.col(j), outputs.col(j)}; }
  Technology with_rts(ReturnsToScale r) const;
};

/// Per-variable ease-of-improvement weights; zero freezes a variable.
struct Orientation {
  Vector d_minus;
  Vector d_plus;

  static Orientation uniform(Index m, Index s, double dm, double dp);
  double inf_norm() const;
  bool is_zero() const;
  /// Divided by its infinity norm; returned unchanged if zero.
  Orientation normalized() const;
  /// All input coefficients equal and all output coefficients equal.
  bool is_uniform() const;
};

/// Checks sizes, finiteness and nonnegativity, and that some nonzero
/// coefficient lands on a nonzero variable of `subject`. Throws DataError.
void validate_orientation(const Orientation& d, const Activity& subject);

/// Coefficients on zero variables of `subject` are dropped to zero.
Orientation effective_orientation(const Orientation& d, const Activity& subject);

struct Diagnostic {
  std::string code;
  std::string message;
};

/// One diagnostic per violated invariant, in a deterministic scan order:
/// shape, then entries row-major (inputs before outputs), then zero rows,
/// then DMUs lacking a positive input or output.
std::vector<Diagnostic> validate_technology(const Technology& tech);

enum class ZeroOutputPolicy {
  Potential,   // the DMU could produce it: replace the zero by a small value
  Impossible,  // the DMU cannot produce it: keep zero, drop it from the score
};

std::optional<ZeroOutputPolicy> parse_zero_output_policy(std::string_view text);
std::string to_string(ZeroOutputPolicy policy);

struct ZeroPolicy {
  ZeroOutputPolicy default_policy = ZeroOutputPolicy::Potential;
  /// Optional override per output row; empty or nullopt means default.
  std::vector<std::optional<ZeroOutputPolicy>> per_output;
  /// A zero output becomes replacement_factor * (smallest positive value in its row).
  double replacement_factor = 0.1;

  ZeroOutputPolicy for_output(Index r) const;
};

struct ZeroAdjustment {
  enum class Kind { InputFrozen, OutputReplaced, OutputExcluded };
  Kind kind;
  Index dmu;
  Index variable;
  double original;
  double replacement;
};

std::string to_string(ZeroAdjustment::Kind kind);

/// Which variables of one subject are left out of its score.
struct SubjectZeros {
  std::vector<bool> frozen_inputs;
  std::vector<bool> excluded_outputs;

  Index active_inputs() const;
  Index active_outputs() const;
  static SubjectZeros none(Index m, Index s);
  /// Zero inputs are frozen and zero outputs excluded. This is exact for
  /// data that went through preprocess_zeros.
  static SubjectZeros from_activity(const Activity& a);
};

struct ZeroAdjustmentLog {
  std::vector<ZeroAdjustment> entries;

  bool empty() const { return entries.empty(); }
  SubjectZeros for_dmu(Index j, Index m, Index s) const;
};

/// Applies the zero-output policy row by row. Inputs are never modified;
/// zero inputs are only logged as frozen.
std::pair<Technology, ZeroAdjustmentLog> preprocess_zeros(const Technology& tech,
                                                           const ZeroPolicy& policy = {});

/// a.x <= b.x + tol and a.y >= b.y - tol componentwise. Throws
/// std::invalid_argument on a dimension mismatch.
bool dominates(const Activity& a, const Activity& b, double tol = 0.0);

/// Appends the returns-to-scale rows on the intensity block
/// [offset, offset + n) of `lp`.
void append_rts_rows(LpProblem& lp, const ReturnsToScale& rts, Index offset, Index n);

/// Feasibility program for a in P: X l <= a.x, Y l >= a.y, l >= 0 and the
/// returns-to-scale rows. Variables are the n intensities; zero objective.
LpProblem membership_lp(const Technology& tech, const Activity& a);

bool in_technology(const Technology& tech, const Activity& a);

enum class Model { Lo, Qo };
std::string to_string(Model model);

/// Everything one evaluation produces.
struct Evaluation {
  Model model = Model::Lo;
  std::string method;  // "lp", "bisection" or "fast-path"
  Activity subject;
  Orientation orientation;  // effective orientation actually applied
  double beta = 0.0;
  Vector theta;
  Vector phi;
  Vector tau_minus;
  Vector tau_plus;
  Activity target;
  Vector lambda;
  Activity projection;
  Vector s_minus;
  Vector s_plus;
  double rho = 1.0;
  bool outside_technology = false;
  bool second_stage_applied = false;
  /// The intensity vector came from a program with alternative optima.
  bool projection_may_vary = false;
  /// d(beta)/d(subject.x) then d(beta)/d(subject.y); empty when unavailable.
  Vector beta_gradient;
  int lp_solves = 0;
};

struct EvalOptions {
  bool second_stage = true;
  bool qo_force_bisection = false;
  /// Run both QO routes whenever the fast path applies and require agreement.
  bool qo_cross_check = false;
  double bisection_tol = 1e-9;
  int bisection_max_iter = 200;
  double agreement_tol = 1e-7;
  SimplexOptions simplex;
};

}  // namespace deaorient
