#include "deaorient/projection.hpp"

#include "deaorient/lo.hpp"

#include <stdexcept>

namespace deaorient {

namespace {

double slack_weight(double target, const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  if (target > 0.0) return 1.0 / target;
  const double top = row.size() > 0 ? row.maxCoeff() : 0.0;
  return top > 0.0 ? 1.0 / top : 1.0;
}

}  // namespace

std::optional<MaxSlackSolution> second_stage_max_slack(const Technology& tech, const Activity& target,
                                                       const SimplexOptions& opts) {
  const Index n = tech.num_dmus();
  const Index m = tech.num_inputs();
  const Index s = tech.num_outputs();
  if (target.num_inputs() != m || target.num_outputs() != s) {
    throw std::invalid_argument("second_stage_max_slack: target dimensions do not match the technology");
  }

  LpProblem lp(n + m + s, Sense::Maximize);
  for (Index i = 0; i < m; ++i) lp.cost[n + i] = slack_weight(target.x[i], tech.inputs.row(i));
  for (Index r = 0; r < s; ++r) lp.cost[n + m + r] = slack_weight(target.y[r], tech.outputs.row(r));

  Vector row(lp.num_vars());
  for (Index i = 0; i < m; ++i) {
    row.setZero();
    row.head(n) = tech.inputs.row(i).transpose();
    row[n + i] = 1.0;
    lp.add_row(row, Relation::Equal, target.x[i]);
  }
  for (Index r = 0; r < s; ++r) {
    row.setZero();
    row.head(n) = tech.outputs.row(r).transpose();
    row[n + m + r] = -1.0;
    lp.add_row(row, Relation::Equal, target.y[r]);
  }
  append_rts_rows(lp, tech.rts, 0, n);

  const LpSolution sol = solve_lp(lp, opts);
  if (sol.status != LpStatus::Optimal) return std::nullopt;

  MaxSlackSolution out;
  out.lambda = sol.primal.head(n);
  out.s_minus = sol.primal.segment(n, m);
  out.s_plus = sol.primal.tail(s);
  out.objective = sol.objective;
  out.alternative_optima = sol.alternative_optima;
  return out;
}

bool is_weakly_efficient(const Technology& tech, const Activity& a, double tol) {
  const Orientation ones = Orientation::uniform(tech.num_inputs(), tech.num_outputs(), 1.0, 1.0);
  EvalOptions opts;
  opts.second_stage = false;
  const Evaluation e = evaluate_lo_external(tech, a, ones, opts);
  return e.beta <= tol;
}

bool is_efficient(const Technology& tech, const Activity& a, double tol) {
  const auto ms = second_stage_max_slack(tech, a);
  if (!ms) throw std::invalid_argument("is_efficient: activity is not in the technology");
  for (Index i = 0; i < a.num_inputs(); ++i) {
    if (ms->s_minus[i] * slack_weight(a.x[i], tech.inputs.row(i)) > tol) return false;
  }
  for (Index r = 0; r < a.num_outputs(); ++r) {
    if (ms->s_plus[r] * slack_weight(a.y[r], tech.outputs.row(r)) > tol) return false;
  }
  return true;
}

}  // namespace deaorient
