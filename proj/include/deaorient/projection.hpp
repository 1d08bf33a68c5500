#pragma once

#include "deaorient/core.hpp"

namespace deaorient {

struct MaxSlackSolution {
  Vector lambda;
  Vector s_minus;
  Vector s_plus;
  double objective = 0.0;
  bool alternative_optima = false;
};

/// Additive second stage at a fixed target:
///
///     max  sum_i s-_i / x*_i + sum_r s+_r / y*_r
///     s.t. X l + s- = x*,  Y l - s+ = y*,  l, s-, s+ >= 0,  RTS rows
///
/// A zero target coordinate is weighted by 1 / (largest entry of its row).
/// Returns nullopt when the target is not in the technology.
std::optional<MaxSlackSolution> second_stage_max_slack(const Technology& tech, const Activity& target,
                                                       const SimplexOptions& opts = {});

/// True iff the all-ones linear-oriented beta of `a` is at most `tol`.
/// Activities outside the technology are reported weakly efficient (beta = 0).
bool is_weakly_efficient(const Technology& tech, const Activity& a, double tol = 1e-7);

/// True iff every relative max slack of `a` is at most `tol`.
/// Throws std::invalid_argument when `a` is not in the technology.
bool is_efficient(const Technology& tech, const Activity& a, double tol = 1e-7);

}  // namespace deaorient
