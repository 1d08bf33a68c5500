#pragma once

#include "deaorient/core.hpp"

namespace deaorient {

/// Linear-oriented program over [beta, l_1..l_n]:
///
///     max  beta
///     s.t. X l + beta d- o x <= x
///          Y l - beta d+ o y >= y
///          l >= 0, beta >= 0, RTS rows
///
/// `d` is used as given; pass the effective orientation.
LpProblem lo_program(const Technology& tech, const Activity& subject, const Orientation& d);

/// Linear-oriented evaluation of a subject known to lie in the technology.
/// Throws DataError for an invalid orientation or an unbounded program and
/// SolverError when the program is infeasible.
Evaluation solve_lo(const Technology& tech, const Activity& subject, const Orientation& d,
                    const EvalOptions& opts = {});

/// Like solve_lo, but an activity outside the technology yields
/// outside_technology = true, beta = 0, rho = 1 and target = subject.
/// The reference set is the technology's DMUs; the subject is not added.
Evaluation evaluate_lo_external(const Technology& tech, const Activity& a, const Orientation& d,
                                const EvalOptions& opts = {});

}  // namespace deaorient
