#pragma once

#include "deaorient/core.hpp"

namespace deaorient {

/// Feasibility program over the intensities at a fixed beta:
///
///     X l <= (1 - beta d-) o x,   Y l >= y / (1 - beta d+),   l >= 0,  RTS rows
///
/// Requires beta * d+_r < 1 for every output.
LpProblem qo_feasibility_lp(const Technology& tech, const Activity& subject, const Orientation& d, double beta);

/// Quadratic-oriented evaluation of a subject in the technology. Uses the
/// closed form through the linear model when qo_fast_path_applies() and
/// opts.qo_force_bisection is off; bisection on beta otherwise.
/// Errors as solve_lo, plus SolverError on a failed internal consistency check.
Evaluation solve_qo(const Technology& tech, const Activity& subject, const Orientation& d,
                    const EvalOptions& opts = {});

/// Closed-form quadratic beta from the linear beta for uniform coefficients
/// d_minus > 0 and d_plus > 0 under CRS. Throws std::invalid_argument
/// unless 0 <= beta_l < 1 / d_minus.
double beta_q_from_beta_l(double beta_l, double d_minus, double d_plus);

/// d(beta_q)/d(beta_l) of beta_q_from_beta_l.
double beta_q_from_beta_l_derivative(double beta_l, double d_minus, double d_plus);

/// CRS, uniform orientation with both coefficients positive, subject without zeros.
bool qo_fast_path_applies(const Technology& tech, const Activity& subject, const Orientation& d);

/// Quadratic evaluation rebuilt from the linear one by rescaling along the
/// subject's ray. Throws std::invalid_argument if qo_fast_path_applies() is false.
Evaluation solve_qo_fast_path(const Technology& tech, const Activity& subject, const Orientation& d,
                              const EvalOptions& opts = {});

/// Counterpart of evaluate_lo_external for the quadratic model.
Evaluation evaluate_qo_external(const Technology& tech, const Activity& a, const Orientation& d,
                                const EvalOptions& opts = {});

}  // namespace deaorient
