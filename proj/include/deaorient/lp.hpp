#pragma once

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

namespace deaorient {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(Relation rel);
std::string to_string(LpStatus status);

/// Dense linear program
///
///     opt  cost' x
///     s.t. A.row(i) x  (relations[i])  rhs[i]
///          lower <= x <= upper
///
/// Lower bounds may be -inf (the variable is split internally); upper bounds
/// may be +inf.
struct LpProblem {
  Sense sense = Sense::Maximize;
  Vector cost;
  Matrix A;
  std::vector<Relation> relations;
  Vector rhs;
  Vector lower;
  Vector upper;

  LpProblem() = default;
  /// Empty program over `num_vars` nonnegative variables with zero cost.
  explicit LpProblem(Index num_vars, Sense s = Sense::Maximize);

  Index num_vars() const { return cost.size(); }
  Index num_rows() const { return A.rows(); }

  /// Appends one constraint row; `coeffs` must have num_vars() entries.
  void add_row(const Eigen::Ref<const Vector>& coeffs, Relation rel, double b);

  /// Throws std::invalid_argument on dimension mismatch or non-finite data.
  void check() const;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Vector primal;
  /// d(objective)/d(rhs[i]) in the caller's sense; zero for redundant rows.
  Vector duals;
  /// cost[j] - A.col(j)' duals, in the caller's sense.
  Vector reduced_costs;
  /// Some nonbasic column prices out at zero, so the optimum may not be unique.
  bool alternative_optima = false;
  int iterations = 0;
  /// Phase-1 optimum (sum of artificials) before the feasibility verdict.
  double infeasibility = 0.0;
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  int bland_after_degenerate = 50;
  int max_iterations = 100000;
};

/// Two-phase primal simplex on a dense tableau. Dantzig pricing, switching
/// to Bland's rule once 50 consecutive degenerate pivots have been taken.
/// Throws std::invalid_argument for malformed problems and
/// std::runtime_error if the iteration cap is hit.
LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& opts = {});

/// Phase 1 only: true iff the minimum sum of artificials is <= feasibility_tol.
bool feasible(const LpProblem& problem, const SimplexOptions& opts = {});

}  // namespace deaorient
