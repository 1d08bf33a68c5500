#pragma once

#include "deaorient/core.hpp"

namespace deaorient {

/// Farrell oriented efficiency: average contraction over active inputs
/// divided by average dilation over active outputs.
///
/// Evaluated in relative-slack form, (1 - sum(1 - theta)/m_a) / (1 + sum(phi - 1)/s_a),
/// so frozen variables (theta = 1 or phi = 1) drop out of the sums and only
/// the counts need adjusting. Throws std::invalid_argument if a count is zero
/// or larger than the vector it refers to.
double farrell_oriented_efficiency(const Vector& theta, const Vector& phi, Index active_inputs,
                                   Index active_outputs);

/// Score of a linear-oriented solution as a function of beta alone.
double rho_lo_closed_form(double beta_l, const Orientation& d);

/// Score of a quadratic-oriented solution as a function of beta alone.
double rho_qo_closed_form(double beta_q, const Orientation& d);

/// Marginal improvement costs at the subject, over inputs then outputs.
struct CostGradient {
  Vector grad;                    // length m + s; only controllable entries are read
  std::vector<bool> controllable; // length m + s
  Index num_inputs = 0;
};

enum class GradientNormalization { Count, InfNorm };

struct CostOrientation {
  Orientation orientation;
  /// beta * multiplier is the first-order cost of reaching the target.
  double beta_cost_multiplier = 1.0;
};

/// Orientation proportional to 1/grad on controllable variables, zero on
/// the rest. Count normalization divides by the number of controllable
/// variables; InfNorm scales so the largest coefficient is 1.
/// Throws DataError if nothing is controllable or a gradient entry is not positive.
CostOrientation orientation_from_cost_gradient(const CostGradient& cg, GradientNormalization normalize);

/// Forces frozen/excluded variables to theta = phi = 1 with zero relative
/// slack, then sets rho with the reduced counts.
Evaluation attach_score(Evaluation eval, const SubjectZeros& zeros);
Evaluation attach_score(Evaluation eval, const ZeroAdjustmentLog& log, Index dmu);

}  // namespace deaorient
