#pragma once

#include "deaorient/core.hpp"

namespace deaorient::detail {

/// Evaluation for an activity outside the technology.
Evaluation outside_evaluation(Model model, const Activity& a, const Orientation& d_eff, Index n);

/// Fills target, projection, slacks and rho once beta, theta, phi and the
/// first-stage intensities are set.
void finish_evaluation(Evaluation& eval, const Technology& tech, const EvalOptions& opts,
                       bool first_stage_alternative_optima);

void check_dimensions(const Technology& tech, const Activity& subject, const char* who);

}  // namespace deaorient::detail
