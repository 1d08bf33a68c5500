#pragma once

#include "deaorient/core.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace deaorient::oracle {

inline constexpr Index kMaxVariables = 6;
inline constexpr Index kMaxConstraints = 12;

using RationalRow = std::vector<mpq_class>;

/// Exact feasibility of { x : A x (rel) b, x_k >= 0 where nonneg[k] } by
/// Fourier-Motzkin elimination over the rationals. Equalities are
/// substituted out first; Chernikov's rule prunes redundant combinations.
/// Throws std::invalid_argument above kMaxVariables variables or
/// kMaxConstraints rows (the sign constraints in `nonneg` are not counted).
bool fm_feasible(const std::vector<RationalRow>& A, const std::vector<Relation>& relations, const RationalRow& b,
                 const std::vector<bool>& nonneg);

/// Same, reading every double exactly.
bool fm_feasible(const Matrix& A, const std::vector<Relation>& relations, const Vector& b,
                 const std::vector<bool>& nonneg);

/// Exact verdict for an LpProblem; zero lower bounds become sign
/// constraints, other finite bounds become rows. The cost is ignored.
bool fm_feasible(const LpProblem& lp);

/// Optimal beta by bisection with fm_feasible as the oracle: exact rational
/// midpoints, `iterations` halvings. Throws std::invalid_argument if the
/// subject is not in the technology or the instance exceeds the caps.
double brute_beta(const Technology& tech, const Activity& subject, const Orientation& d, Model model,
                  int iterations = 60);

/// Input-oriented radial (CCR-type) score: min t s.t. X l <= t x, Y l >= y,
/// l >= 0 and the technology's RTS rows.
double radial_input_efficiency(const Technology& tech, const Activity& subject);

struct PairCheck {
  Activity a;        // the worse activity
  Activity better;   // dominates a
  double beta_a = 0.0;
  double beta_better = 0.0;
  double rho_a = 1.0;
  double rho_better = 1.0;
  bool beta_violation = false;
  bool rho_violation = false;

  bool violated() const { return beta_violation || rho_violation; }
};

struct ScanOptions {
  double tol = 1e-9;
  /// Self-test mode: the comparator is inverted, so a correct solver
  /// produces violations.
  bool corrupt_comparator = false;
};

/// Evaluates both activities externally and compares: beta must not rise
/// and rho must not fall when moving to the dominating activity.
PairCheck check_pair(const Technology& tech, const Orientation& d, Model model, const Activity& a,
                     const Activity& better, const ScanOptions& opts = {});

/// Samples `samples` dominated pairs inside the technology from a seeded
/// generator and returns the pairs that violate monotonicity.
///
/// Each pair starts from a random DMU j: a scales x_j by factors in [1, 1.5]
/// and y_j by factors in [0.6, 1]; the better activity uses factors between
/// those and 1.
std::vector<PairCheck> monotonicity_scan(const Technology& tech, const Orientation& d, Model model, int samples,
                                         std::uint64_t seed, const ScanOptions& opts = {});

}  // namespace deaorient::oracle
