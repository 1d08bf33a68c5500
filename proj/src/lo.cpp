#include "deaorient/lo.hpp"

#include "models.hpp"

namespace deaorient {

namespace {

enum class LoOutcome { Solved, Outside };

LoOutcome run_lo(const Technology& tech, const Activity& subject, const Orientation& d, const EvalOptions& opts,
                 Evaluation& eval) {
  validate_orientation(d, subject);
  const Orientation d_eff = effective_orientation(d, subject);
  const Index n = tech.num_dmus();
  const Index m = tech.num_inputs();
  const Index s = tech.num_outputs();

  const LpSolution sol = solve_lp(lo_program(tech, subject, d_eff), opts.simplex);
  if (sol.status == LpStatus::Infeasible) {
    eval = detail::outside_evaluation(Model::Lo, subject, d_eff, n);
    return LoOutcome::Outside;
  }
  if (sol.status == LpStatus::Unbounded) {
    throw DataError("linear-oriented program is unbounded; check for outputs that can grow without inputs");
  }

  eval = Evaluation{};
  eval.model = Model::Lo;
  eval.method = "lp";
  eval.subject = subject;
  eval.orientation = d_eff;
  eval.beta = sol.primal[0];
  eval.tau_minus = eval.beta * d_eff.d_minus;
  eval.tau_plus = eval.beta * d_eff.d_plus;
  eval.theta = Vector::Ones(m) - eval.tau_minus;
  eval.phi = Vector::Ones(s) + eval.tau_plus;
  eval.lambda = sol.primal.tail(n);
  eval.lp_solves = 1;

  eval.beta_gradient.resize(m + s);
  for (Index i = 0; i < m; ++i) eval.beta_gradient[i] = sol.duals[i] * eval.theta[i];
  for (Index r = 0; r < s; ++r) eval.beta_gradient[m + r] = sol.duals[m + r] * eval.phi[r];

  detail::finish_evaluation(eval, tech, opts, sol.alternative_optima);
  return LoOutcome::Solved;
}

}  // namespace

LpProblem lo_program(const Technology& tech, const Activity& subject, const Orientation& d) {
  detail::check_dimensions(tech, subject, "lo_program");
  const Index n = tech.num_dmus();
  LpProblem lp(n + 1, Sense::Maximize);
  lp.cost[0] = 1.0;
  Vector row(n + 1);
  for (Index i = 0; i < tech.num_inputs(); ++i) {
    row[0] = d.d_minus[i] * subject.x[i];
    row.tail(n) = tech.inputs.row(i).transpose();
    lp.add_row(row, Relation::LessEqual, subject.x[i]);
  }
  for (Index r = 0; r < tech.num_outputs(); ++r) {
    row[0] = -d.d_plus[r] * subject.y[r];
    row.tail(n) = tech.outputs.row(r).transpose();
    lp.add_row(row, Relation::GreaterEqual, subject.y[r]);
  }
  append_rts_rows(lp, tech.rts, 1, n);
  return lp;
}

Evaluation solve_lo(const Technology& tech, const Activity& subject, const Orientation& d,
                    const EvalOptions& opts) {
  Evaluation eval;
  if (run_lo(tech, subject, d, opts, eval) == LoOutcome::Outside) {
    throw SolverError("linear-oriented program is infeasible: the subject is not in the technology");
  }
  return eval;
}

Evaluation evaluate_lo_external(const Technology& tech, const Activity& a, const Orientation& d,
                                const EvalOptions& opts) {
  Evaluation eval;
  run_lo(tech, a, d, opts, eval);
  return eval;
}

}  // namespace deaorient
