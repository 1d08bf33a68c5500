#include "deaorient/lo.hpp"
#include "deaorient/oracle.hpp"
#include "deaorient/projection.hpp"
#include "deaorient/qo.hpp"
#include "deaorient/report.hpp"

#include <cmath>
#include <sstream>

namespace deaorient {

namespace {

class Check {
 public:
  explicit Check(std::string name) { result_.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok) {
      ++failures_;
      if (first_failure_.empty()) first_failure_ = what;
    }
  }
  void tally(int cases, int failed, const std::string& what) {
    count_ += cases;
    failures_ += failed;
    if (failed > 0 && first_failure_.empty()) first_failure_ = what;
  }
  void track(double deviation) { worst_ = std::max(worst_, deviation); }

  CheckResult done() {
    std::ostringstream os;
    os << count_ << " cases";
    if (worst_ > 0.0) os << ", max deviation " << worst_;
    if (failures_ > 0) os << ", " << failures_ << " failed (first: " << first_failure_ << ")";
    result_.passed = failures_ == 0;
    result_.detail = os.str();
    return result_;
  }

 private:
  CheckResult result_;
  int count_ = 0;
  int failures_ = 0;
  double worst_ = 0.0;
  std::string first_failure_;
};

bool has_zero(const Activity& a) { return (a.x.array() == 0.0).any() || (a.y.array() == 0.0).any(); }

bool within_oracle_caps(const Technology& t) {
  Index rows = t.num_inputs() + t.num_outputs();
  if (t.rts.kind == RtsKind::Vrs || t.rts.kind == RtsKind::Nirs || t.rts.kind == RtsKind::Ndrs) rows += 1;
  if (t.rts.kind == RtsKind::Grs) rows += (t.rts.lower > 0.0) + std::isfinite(t.rts.upper);
  return t.num_dmus() <= oracle::kMaxVariables && rows <= oracle::kMaxConstraints;
}

}  // namespace

std::vector<CheckResult> self_check(const Dataset& data, const RunConfig& config, const SelfCheckOptions& opts) {
  RunConfig cfg = config;
  cfg.models = {Model::Lo, Model::Qo};
  cfg.second_stage = true;
  const Report report = run_batch(data, cfg);
  const Technology& t = report.data.tech;
  const Orientation& d = report.orientation;
  const Index n = t.num_dmus();
  const Index m = t.num_inputs();
  const Index s = t.num_outputs();
  const auto& lo_results = report.runs[0].results;
  const auto& qo_results = report.runs[1].results;
  std::vector<CheckResult> out;

  {
    Check c("evaluations");
    for (const auto& run : report.runs) {
      for (const auto& r : run.results) c.expect(r.eval.has_value(), to_string(run.model) + " " + r.name + ": " + r.error);
    }
    out.push_back(c.done());
  }

  {
    Check weak("targets-weakly-efficient");
    Check strong("projections-efficient");
    for (const auto& run : report.runs) {
      for (const auto& r : run.results) {
        if (!r.eval) continue;
        const std::string who = to_string(run.model) + " " + r.name;
        weak.expect(is_weakly_efficient(t, r.eval->target), who);
        strong.expect(dominates(r.eval->projection, r.eval->target, 1e-9) && is_efficient(t, r.eval->projection), who);
      }
    }
    out.push_back(weak.done());
    out.push_back(strong.done());
  }

  {
    Check c("qo-not-above-lo");
    EvalOptions eo = cfg.eval_options();
    eo.second_stage = false;
    const Orientation input_only{d.d_minus, Vector::Zero(s)};
    for (Index j = 0; j < n; ++j) {
      if (lo_results[j].eval && qo_results[j].eval) {
        c.expect(qo_results[j].eval->beta <= lo_results[j].eval->beta + 1e-9, t.names[j]);
      }
      const Activity a = t.activity(j);
      if (input_only.is_zero() || effective_orientation(input_only, a).is_zero()) continue;
      const double bl = solve_lo(t, a, input_only, eo).beta;
      const double bq = solve_qo(t, a, input_only, eo).beta;
      c.track(std::abs(bq - bl));
      c.expect(std::abs(bq - bl) <= 1e-9, t.names[j] + " with d+ = 0");
    }
    out.push_back(c.done());
  }

  {
    Check c("closed-form-scores");
    for (Index j = 0; j < n; ++j) {
      if (has_zero(t.activity(j))) continue;
      if (lo_results[j].eval) {
        const double dev = std::abs(lo_results[j].eval->rho - rho_lo_closed_form(lo_results[j].eval->beta, d));
        c.track(dev);
        c.expect(dev <= 1e-12, "lo " + t.names[j]);
      }
      if (qo_results[j].eval) {
        const double dev = std::abs(qo_results[j].eval->rho - rho_qo_closed_form(qo_results[j].eval->beta, d));
        c.track(dev);
        c.expect(dev <= 1e-12, "qo " + t.names[j]);
      }
    }
    out.push_back(c.done());
  }

  if (t.rts.kind == RtsKind::Crs && d.is_uniform() && d.d_minus[0] > 0.0 && d.d_plus[0] > 0.0) {
    Check fast("fast-path-agreement");
    Check radial("radial-score");
    EvalOptions eo = cfg.eval_options();
    eo.second_stage = false;
    eo.qo_force_bisection = true;
    for (Index j = 0; j < n; ++j) {
      const Activity a = t.activity(j);
      if (!qo_fast_path_applies(t, a, d) || !lo_results[j].eval || !qo_results[j].eval) continue;
      const double slow = solve_qo(t, a, d, eo).beta;
      const double closed = beta_q_from_beta_l(lo_results[j].eval->beta, d.d_minus[0], d.d_plus[0]);
      fast.track(std::abs(slow - closed));
      fast.expect(std::abs(slow - closed) <= 1e-7, t.names[j]);
      const double ccr = oracle::radial_input_efficiency(t, a);
      const double dev =
          std::max(std::abs(lo_results[j].eval->rho - ccr), std::abs(qo_results[j].eval->rho - ccr));
      radial.track(dev);
      radial.expect(dev <= 1e-6, t.names[j]);
    }
    out.push_back(fast.done());
    out.push_back(radial.done());
  }

  if (t.rts.kind == RtsKind::Crs) {
    Check c("crs-balance");
    EvalOptions eo = cfg.eval_options();
    eo.second_stage = false;
    eo.qo_force_bisection = true;
    const Orientation ones = Orientation::uniform(m, s, 1.0, 1.0);
    for (Index j = 0; j < n; ++j) {
      const Activity a = t.activity(j);
      if (has_zero(a)) continue;
      const Evaluation e = solve_qo(t, a, ones, eo);
      for (Index i = 0; i < m; ++i) {
        for (Index r = 0; r < s; ++r) {
          const double dev = std::abs(e.phi[r] - 1.0 / e.theta[i]);
          c.track(dev);
          c.expect(dev <= 1e-9, t.names[j]);
        }
      }
    }
    out.push_back(c.done());
  }

  if (within_oracle_caps(t)) {
    Check beta("oracle-beta");
    Check member("oracle-membership");
    EvalOptions eo = cfg.eval_options();
    eo.second_stage = false;
    eo.qo_force_bisection = true;
    for (Index j = 0; j < n; ++j) {
      const Activity a = t.activity(j);
      if (lo_results[j].eval) {
        const double dev = std::abs(oracle::brute_beta(t, a, d, Model::Lo) - lo_results[j].eval->beta);
        beta.track(dev);
        beta.expect(dev <= 1e-7, "lo " + t.names[j]);
      }
      if (qo_results[j].eval) {
        const double dev = std::abs(oracle::brute_beta(t, a, d, Model::Qo) - solve_qo(t, a, d, eo).beta);
        beta.track(dev);
        beta.expect(dev <= 1e-7, "qo " + t.names[j]);
      }
      for (const Activity& probe : {a, a.scaled(0.5), Activity{0.9 * a.x, 1.1 * a.y}, Activity{a.x, 0.5 * a.y}}) {
        const LpProblem lp = membership_lp(t, probe);
        member.expect(feasible(lp) == oracle::fm_feasible(lp), t.names[j]);
      }
    }
    out.push_back(beta.done());
    out.push_back(member.done());
  }

  for (Model model : {Model::Lo, Model::Qo}) {
    Check c("monotonicity-" + to_string(model));
    oracle::ScanOptions so;
    so.corrupt_comparator = opts.corrupt_comparator;
    const auto violations = oracle::monotonicity_scan(t, d, model, opts.monotonicity_samples, opts.seed, so);
    c.tally(opts.monotonicity_samples, static_cast<int>(violations.size()), "dominated pair scored worse");
    out.push_back(c.done());
  }
  return out;
}

}  // namespace deaorient
