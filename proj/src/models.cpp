#include "models.hpp"

#include "deaorient/projection.hpp"
#include "deaorient/scores.hpp"

#include <stdexcept>
#include <string>

namespace deaorient::detail {

namespace {

void clamp_roundoff(Vector& v) {
  for (Index k = 0; k < v.size(); ++k) {
    if (v[k] < 0.0 && v[k] > -1e-9) v[k] = 0.0;
  }
}

}  // namespace

Evaluation outside_evaluation(Model model, const Activity& a, const Orientation& d_eff, Index n) {
  Evaluation e;
  e.model = model;
  e.method = "membership";
  e.subject = a;
  e.orientation = d_eff;
  e.beta = 0.0;
  e.theta = Vector::Ones(a.num_inputs());
  e.phi = Vector::Ones(a.num_outputs());
  e.tau_minus = Vector::Zero(a.num_inputs());
  e.tau_plus = Vector::Zero(a.num_outputs());
  e.target = a;
  e.projection = a;
  e.lambda = Vector::Zero(n);
  e.s_minus = Vector::Zero(a.num_inputs());
  e.s_plus = Vector::Zero(a.num_outputs());
  e.rho = 1.0;
  e.outside_technology = true;
  e.lp_solves = 1;
  return e;
}

void finish_evaluation(Evaluation& eval, const Technology& tech, const EvalOptions& opts,
                       bool first_stage_alternative_optima) {
  eval.target.x = eval.theta.cwiseProduct(eval.subject.x);
  eval.target.y = eval.phi.cwiseProduct(eval.subject.y);
  eval.projection_may_vary = first_stage_alternative_optima;

  if (opts.second_stage) {
    const auto ms = second_stage_max_slack(tech, eval.target, opts.simplex);
    ++eval.lp_solves;
    if (ms) {
      eval.lambda = ms->lambda;
      eval.second_stage_applied = true;
      eval.projection_may_vary = ms->alternative_optima;
    }
  }

  eval.projection.x = tech.inputs * eval.lambda;
  eval.projection.y = tech.outputs * eval.lambda;
  eval.s_minus = eval.target.x - eval.projection.x;
  eval.s_plus = eval.projection.y - eval.target.y;
  clamp_roundoff(eval.s_minus);
  clamp_roundoff(eval.s_plus);

  const SubjectZeros zeros = SubjectZeros::from_activity(eval.subject);
  eval = attach_score(std::move(eval), zeros);
}

void check_dimensions(const Technology& tech, const Activity& subject, const char* who) {
  if (subject.num_inputs() != tech.num_inputs() || subject.num_outputs() != tech.num_outputs()) {
    throw std::invalid_argument(std::string(who) + ": subject dimensions do not match the technology");
  }
}

}  // namespace deaorient::detail
