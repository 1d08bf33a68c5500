#include "deaorient/scores.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deaorient {

double farrell_oriented_efficiency(const Vector& theta, const Vector& phi, Index active_inputs,
                                   Index active_outputs) {
  if (active_inputs < 1 || active_outputs < 1) {
    throw std::invalid_argument("farrell_oriented_efficiency: no active input or output");
  }
  if (active_inputs > theta.size() || active_outputs > phi.size()) {
    throw std::invalid_argument("farrell_oriented_efficiency: active count exceeds vector length");
  }
  const double contraction = 1.0 - (1.0 - theta.array()).sum() / static_cast<double>(active_inputs);
  const double dilation = 1.0 + (phi.array() - 1.0).sum() / static_cast<double>(active_outputs);
  return contraction / dilation;
}

double rho_lo_closed_form(double beta_l, const Orientation& d) {
  return (1.0 - beta_l * d.d_minus.mean()) / (1.0 + beta_l * d.d_plus.mean());
}

double rho_qo_closed_form(double beta_q, const Orientation& d) {
  const double num = 1.0 - beta_q * d.d_minus.mean();
  const double den = (1.0 / (1.0 - beta_q * d.d_plus.array())).mean();
  return num / den;
}

CostOrientation orientation_from_cost_gradient(const CostGradient& cg, GradientNormalization normalize) {
  const Index total = cg.grad.size();
  if (static_cast<Index>(cg.controllable.size()) != total || cg.num_inputs < 0 || cg.num_inputs > total) {
    throw DataError("cost gradient: mask and gradient lengths disagree");
  }
  Index count = 0;
  double max_grad = 0.0;
  for (Index k = 0; k < total; ++k) {
    if (!cg.controllable[k]) continue;
    if (!(cg.grad[k] > 0.0) || !std::isfinite(cg.grad[k])) {
      throw DataError("cost gradient must be strictly positive on controllable variables");
    }
    ++count;
    max_grad = std::max(max_grad, cg.grad[k]);
  }
  if (count == 0) throw DataError("cost gradient: no controllable variable");

  const double scale = normalize == GradientNormalization::Count ? 1.0 / static_cast<double>(count) : max_grad;
  Vector d = Vector::Zero(total);
  for (Index k = 0; k < total; ++k) {
    if (cg.controllable[k]) d[k] = scale / cg.grad[k];
  }
  CostOrientation out;
  out.orientation.d_minus = d.head(cg.num_inputs);
  out.orientation.d_plus = d.tail(total - cg.num_inputs);
  out.beta_cost_multiplier =
      normalize == GradientNormalization::Count ? 1.0 : max_grad * static_cast<double>(count);
  return out;
}

Evaluation attach_score(Evaluation eval, const SubjectZeros& zeros) {
  for (Index i = 0; i < eval.theta.size(); ++i) {
    if (i < static_cast<Index>(zeros.frozen_inputs.size()) && zeros.frozen_inputs[i]) {
      eval.theta[i] = 1.0;
      eval.tau_minus[i] = 0.0;
    }
  }
  for (Index r = 0; r < eval.phi.size(); ++r) {
    if (r < static_cast<Index>(zeros.excluded_outputs.size()) && zeros.excluded_outputs[r]) {
      eval.phi[r] = 1.0;
      eval.tau_plus[r] = 0.0;
    }
  }
  eval.rho = farrell_oriented_efficiency(eval.theta, eval.phi, zeros.active_inputs(), zeros.active_outputs());
  return eval;
}

Evaluation attach_score(Evaluation eval, const ZeroAdjustmentLog& log, Index dmu) {
  const SubjectZeros zeros = log.for_dmu(dmu, eval.theta.size(), eval.phi.size());
  return attach_score(std::move(eval), zeros);
}

}  // namespace deaorient
