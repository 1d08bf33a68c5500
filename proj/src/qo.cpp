#include "deaorient/qo.hpp"

#include "deaorient/lo.hpp"
#include "deaorient/scores.hpp"
#include "models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace deaorient {

namespace {

struct Polish {
  double beta = 0.0;
  Vector lambda;
  Vector gradient;
  bool alternative_optima = false;
};

// Outer approximation of the dilation constraint by its tangent at b0:
// 1/(1 - b d+) >= g0 + g0'(b - b0), so the optimum bounds beta from above.
std::optional<Polish> tangent_step(const Technology& tech, const Activity& subject, const Orientation& d, double b0,
                                   const SimplexOptions& simplex) {
  const Index n = tech.num_dmus();
  const Index m = tech.num_inputs();
  const Index s = tech.num_outputs();
  LpProblem lp(n + 1, Sense::Maximize);
  lp.cost[0] = 1.0;
  lp.upper[0] = b0;
  Vector row(n + 1);
  for (Index i = 0; i < m; ++i) {
    row[0] = d.d_minus[i] * subject.x[i];
    row.tail(n) = tech.inputs.row(i).transpose();
    lp.add_row(row, Relation::LessEqual, subject.x[i]);
  }
  for (Index r = 0; r < s; ++r) {
    const double g0 = 1.0 / (1.0 - b0 * d.d_plus[r]);
    const double slope = d.d_plus[r] * g0 * g0;
    row[0] = -slope * subject.y[r];
    row.tail(n) = tech.outputs.row(r).transpose();
    lp.add_row(row, Relation::GreaterEqual, (g0 - b0 * slope) * subject.y[r]);
  }
  append_rts_rows(lp, tech.rts, 1, n);

  const LpSolution sol = solve_lp(lp, simplex);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  Polish p;
  p.beta = sol.primal[0];
  p.lambda = sol.primal.tail(n);
  p.alternative_optima = sol.alternative_optima;
  if (p.beta < b0) {
    p.gradient.resize(m + s);
    for (Index i = 0; i < m; ++i) p.gradient[i] = sol.duals[i] * (1.0 - p.beta * d.d_minus[i]);
    for (Index r = 0; r < s; ++r) p.gradient[m + r] = sol.duals[m + r] / (1.0 - p.beta * d.d_plus[r]);
  }
  return p;
}

void set_factors(Evaluation& e, double beta) {
  const Orientation& d = e.orientation;
  e.beta = beta;
  e.tau_minus = beta * d.d_minus;
  e.theta = Vector::Ones(d.d_minus.size()) - e.tau_minus;
  e.phi = (Vector::Ones(d.d_plus.size()) - beta * d.d_plus).cwiseInverse();
  e.tau_plus = e.phi - Vector::Ones(d.d_plus.size());
}

Evaluation bisect(const Technology& tech, const Activity& subject, const Orientation& d_eff,
                  const EvalOptions& opts) {
  Evaluation e;
  e.model = Model::Qo;
  e.method = "bisection";
  e.subject = subject;
  e.orientation = d_eff;

  auto feasible_at = [&](double beta) {
    ++e.lp_solves;
    return feasible(qo_feasibility_lp(tech, subject, d_eff, beta), opts.simplex);
  };

  if (!feasible_at(0.0)) {
    throw SolverError("quadratic-oriented program is infeasible: the subject is not in the technology");
  }
  double lo = 0.0;
  double hi = 1.0 / d_eff.inf_norm() - 1e-12;
  if (feasible_at(hi)) {
    lo = hi;
  } else {
    for (int it = 0; it < opts.bisection_max_iter && hi - lo > opts.bisection_tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible_at(mid) ? lo : hi) = mid;
    }
    if (hi - lo > opts.bisection_tol) {
      throw SolverError("bisection on beta did not reach the requested tolerance");
    }
  }

  double beta = lo;
  std::optional<Polish> polish;
  if (lo < hi) {
    polish = tangent_step(tech, subject, d_eff, hi, opts.simplex);
    ++e.lp_solves;
    // The tangent program bounds beta from above, so a value below `lo`
    // means `lo` itself was only feasible within the phase-1 tolerance.
    if (polish && polish->beta >= lo - 1e-6 && feasible_at(polish->beta)) {
      beta = polish->beta;
    } else {
      polish.reset();
    }
  }

  if (beta > 0.0 && !feasible_at(0.5 * beta)) {
    throw SolverError("feasibility is not monotone in beta at beta/2");
  }

  set_factors(e, beta);
  bool alternative = true;
  if (polish) {
    e.lambda = polish->lambda;
    e.beta_gradient = polish->gradient;
    alternative = polish->alternative_optima;
  } else {
    const LpSolution sol = solve_lp(qo_feasibility_lp(tech, subject, d_eff, beta), opts.simplex);
    ++e.lp_solves;
    if (sol.status != LpStatus::Optimal) throw SolverError("no intensity vector at the last feasible beta");
    e.lambda = sol.primal;
  }
  detail::finish_evaluation(e, tech, opts, alternative);
  return e;
}

}  // namespace

LpProblem qo_feasibility_lp(const Technology& tech, const Activity& subject, const Orientation& d, double beta) {
  detail::check_dimensions(tech, subject, "qo_feasibility_lp");
  const Index n = tech.num_dmus();
  LpProblem lp(n, Sense::Minimize);
  for (Index i = 0; i < tech.num_inputs(); ++i) {
    lp.add_row(tech.inputs.row(i).transpose(), Relation::LessEqual, (1.0 - beta * d.d_minus[i]) * subject.x[i]);
  }
  for (Index r = 0; r < tech.num_outputs(); ++r) {
    const double den = 1.0 - beta * d.d_plus[r];
    if (!(den > 0.0)) throw std::invalid_argument("qo_feasibility_lp: beta * d+ must stay below 1");
    lp.add_row(tech.outputs.row(r).transpose(), Relation::GreaterEqual, subject.y[r] / den);
  }
  append_rts_rows(lp, tech.rts, 0, n);
  return lp;
}

double beta_q_from_beta_l(double beta_l, double d_minus, double d_plus) {
  if (!(d_minus > 0.0) || !(d_plus > 0.0) || !std::isfinite(d_minus) || !std::isfinite(d_plus)) {
    throw std::invalid_argument("beta_q_from_beta_l: coefficients must be positive and finite");
  }
  if (!(beta_l >= 0.0) || !(beta_l * d_minus < 1.0)) {
    throw std::invalid_argument("beta_q_from_beta_l: need 0 <= beta_l < 1/d_minus");
  }
  const double sum = d_minus + d_plus;
  const double prod = d_minus * d_plus;
  const double h = 4.0 * beta_l * prod * sum / (1.0 + beta_l * d_plus);
  // Rationalized root, avoids cancellation for small beta_l.
  return h / (2.0 * prod * (sum + std::sqrt(sum * sum - h)));
}

double beta_q_from_beta_l_derivative(double beta_l, double d_minus, double d_plus) {
  beta_q_from_beta_l(beta_l, d_minus, d_plus);
  const double sum = d_minus + d_plus;
  const double prod = d_minus * d_plus;
  const double q = 1.0 + beta_l * d_plus;
  const double h = 4.0 * beta_l * prod * sum / q;
  const double dh = 4.0 * prod * sum / (q * q);
  return dh / (4.0 * prod * std::sqrt(sum * sum - h));
}

bool qo_fast_path_applies(const Technology& tech, const Activity& subject, const Orientation& d) {
  if (tech.rts.kind != RtsKind::Crs || !d.is_uniform()) return false;
  if (d.d_minus.size() == 0 || d.d_plus.size() == 0) return false;
  if (!(d.d_minus[0] > 0.0) || !(d.d_plus[0] > 0.0)) return false;
  return (subject.x.array() > 0.0).all() && (subject.y.array() > 0.0).all();
}

Evaluation solve_qo_fast_path(const Technology& tech, const Activity& subject, const Orientation& d,
                              const EvalOptions& opts) {
  if (!qo_fast_path_applies(tech, subject, d)) {
    throw std::invalid_argument("solve_qo_fast_path: needs CRS, a uniform positive orientation and a positive subject");
  }
  const Evaluation lo = solve_lo(tech, subject, d, opts);
  const double dm = d.d_minus[0];
  const double dp = d.d_plus[0];

  Evaluation e = lo;
  e.model = Model::Qo;
  e.method = "fast-path";
  set_factors(e, beta_q_from_beta_l(lo.beta, dm, dp));
  e.target.x = e.theta.cwiseProduct(subject.x);
  e.target.y = e.phi.cwiseProduct(subject.y);

  // Both targets sit on the same ray through the subject.
  const double k = (1.0 - e.beta * dm) / (1.0 - lo.beta * dm);
  e.lambda = k * lo.lambda;
  e.projection = lo.projection.scaled(k);
  e.s_minus = (e.target.x - e.projection.x).cwiseMax(0.0);
  e.s_plus = (e.projection.y - e.target.y).cwiseMax(0.0);
  if (lo.beta_gradient.size() > 0) {
    e.beta_gradient = beta_q_from_beta_l_derivative(lo.beta, dm, dp) * lo.beta_gradient;
  }
  const SubjectZeros zeros = SubjectZeros::from_activity(subject);
  return attach_score(std::move(e), zeros);
}

Evaluation solve_qo(const Technology& tech, const Activity& subject, const Orientation& d,
                    const EvalOptions& opts) {
  validate_orientation(d, subject);
  if (!opts.qo_force_bisection && qo_fast_path_applies(tech, subject, d)) {
    Evaluation fast = solve_qo_fast_path(tech, subject, d, opts);
    if (opts.qo_cross_check) {
      const Evaluation slow = bisect(tech, subject, effective_orientation(d, subject), opts);
      if (std::abs(fast.beta - slow.beta) > opts.agreement_tol) {
        std::ostringstream os;
        os.precision(17);
        os << "fast-path/bisection disagreement: " << fast.beta << " vs " << slow.beta;
        throw SolverError(os.str());
      }
      fast.lp_solves += slow.lp_solves;
    }
    return fast;
  }
  return bisect(tech, subject, effective_orientation(d, subject), opts);
}

Evaluation evaluate_qo_external(const Technology& tech, const Activity& a, const Orientation& d,
                                const EvalOptions& opts) {
  validate_orientation(d, a);
  if (!in_technology(tech, a)) {
    return detail::outside_evaluation(Model::Qo, a, effective_orientation(d, a), tech.num_dmus());
  }
  Evaluation e = solve_qo(tech, a, d, opts);
  ++e.lp_solves;
  return e;
}

}  // namespace deaorient
