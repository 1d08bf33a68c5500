#include "deaorient/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace deaorient {

namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double parse_double(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DataError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw DataError("not a number: '" + s + "'");
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// ReturnsToScale

ReturnsToScale ReturnsToScale::grs(double lower, double upper) {
  if (!(lower >= 0.0 && lower <= 1.0 && upper >= 1.0) || std::isnan(upper)) {
    throw DataError("GRS bounds must satisfy 0 <= L <= 1 <= U (got L=" + fmt(lower) + ", U=" + fmt(upper) + ")");
  }
  return {RtsKind::Grs, lower, upper};
}

ReturnsToScale ReturnsToScale::parse(std::string_view text) {
  const std::string t = lowercase(text);
  if (t == "crs") return crs();
  if (t == "vrs") return vrs();
  if (t == "nirs") return nirs();
  if (t == "ndrs") return ndrs();
  if (t.rfind("grs:", 0) == 0) {
    const auto sep = t.find(':', 4);
    if (sep == std::string::npos) throw DataError("GRS needs grs:L:U, got '" + t + "'");
    return grs(parse_double(std::string_view(t).substr(4, sep - 4)),
               parse_double(std::string_view(t).substr(sep + 1)));
  }
  throw DataError("unknown returns to scale '" + std::string(text) + "'");
}

std::string ReturnsToScale::to_string() const {
  switch (kind) {
    case RtsKind::Crs: return "crs";
    case RtsKind::Vrs: return "vrs";
    case RtsKind::Nirs: return "nirs";
    case RtsKind::Ndrs: return "ndrs";
    case RtsKind::Grs: return "grs:" + fmt(lower) + ":" + fmt(upper);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Technology

Technology::Technology(Matrix x, Matrix y, ReturnsToScale r, std::vector<std::string> labels)
    : inputs(std::move(x)), outputs(std::move(y)), names(std::move(labels)), rts(r) {
  if (names.empty()) {
    for (Index j = 0; j < inputs.cols(); ++j) names.push_back("DMU" + std::to_string(j + 1));
  }
}

Technology Technology::with_rts(ReturnsToScale r) const {
  Technology t = *this;
  t.rts = r;
  return t;
}

// ---------------------------------------------------------------------------
// Orientation

Orientation Orientation::uniform(Index m, Index s, double dm, double dp) {
  return {Vector::Constant(m, dm), Vector::Constant(s, dp)};
}

double Orientation::inf_norm() const {
  double v = 0.0;
  if (d_minus.size() > 0) v = std::max(v, d_minus.cwiseAbs().maxCoeff());
  if (d_plus.size() > 0) v = std::max(v, d_plus.cwiseAbs().maxCoeff());
  return v;
}

bool Orientation::is_zero() const { return inf_norm() == 0.0; }

Orientation Orientation::normalized() const {
  const double norm = inf_norm();
  if (norm == 0.0) return *this;
  return {d_minus / norm, d_plus / norm};
}

bool Orientation::is_uniform() const {
  auto constant = [](const Vector& v) { return v.size() == 0 || (v.array() == v[0]).all(); };
  return constant(d_minus) && constant(d_plus);
}

void validate_orientation(const Orientation& d, const Activity& subject) {
  if (d.d_minus.size() != subject.num_inputs() || d.d_plus.size() != subject.num_outputs()) {
    throw DataError("orientation has " + std::to_string(d.d_minus.size()) + ":" +
                    std::to_string(d.d_plus.size()) + " coefficients but the data has " +
                    std::to_string(subject.num_inputs()) + " inputs and " +
                    std::to_string(subject.num_outputs()) + " outputs");
  }
  if (!d.d_minus.allFinite() || !d.d_plus.allFinite() || (d.d_minus.array() < 0.0).any() ||
      (d.d_plus.array() < 0.0).any()) {
    throw DataError("orientation coefficients must be finite and nonnegative");
  }
  if (d.is_zero()) throw DataError("orientation must be nonzero");
  if (effective_orientation(d, subject).is_zero()) {
    throw DataError("orientation has no nonzero coefficient on a nonzero variable of the subject");
  }
}

Orientation effective_orientation(const Orientation& d, const Activity& subject) {
  Orientation e = d;
  for (Index i = 0; i < e.d_minus.size(); ++i) {
    if (subject.x[i] == 0.0) e.d_minus[i] = 0.0;
  }
  for (Index r = 0; r < e.d_plus.size(); ++r) {
    if (subject.y[r] == 0.0) e.d_plus[r] = 0.0;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Diagnostic> validate_technology(const Technology& tech) {
  std::vector<Diagnostic> out;
  const Index n = tech.num_dmus();
  const Index m = tech.num_inputs();
  const Index s = tech.num_outputs();
  if (n < 1) out.push_back({"no-dmus", "technology has no DMUs"});
  if (m < 1) out.push_back({"no-inputs", "technology has no inputs"});
  if (s < 1) out.push_back({"no-outputs", "technology has no outputs"});
  if (tech.outputs.cols() != n) {
    out.push_back({"shape", "input and output matrices have different DMU counts"});
    return out;
  }
  if (static_cast<Index>(tech.names.size()) != n) {
    out.push_back({"shape", "number of DMU names does not match the data"});
  }

  auto label = [&](Index j) {
    return j < static_cast<Index>(tech.names.size()) ? tech.names[j] : "#" + std::to_string(j + 1);
  };
  auto scan = [&](const Matrix& M, const char* kind) {
    for (Index r = 0; r < M.rows(); ++r) {
      for (Index j = 0; j < M.cols(); ++j) {
        const double v = M(r, j);
        const std::string where = std::string(kind) + " " + std::to_string(r + 1) + " of DMU " + label(j);
        if (!std::isfinite(v)) {
          out.push_back({"non-finite", where + " is not finite"});
        } else if (v < 0.0) {
          out.push_back({"negative", where + " is negative (" + fmt(v) +
                                         "); negative data is not supported"});
        }
      }
    }
  };
  scan(tech.inputs, "input");
  scan(tech.outputs, "output");

  for (Index i = 0; i < m; ++i) {
    if (n > 0 && (tech.inputs.row(i).array() == 0.0).all()) {
      out.push_back({"degenerate-row", "degenerate variable row: input " + std::to_string(i + 1) + " is zero for every DMU"});
    }
  }
  for (Index r = 0; r < s; ++r) {
    if (n > 0 && (tech.outputs.row(r).array() == 0.0).all()) {
      out.push_back({"degenerate-row", "degenerate variable row: output " + std::to_string(r + 1) + " is zero for every DMU"});
    }
  }
  for (Index j = 0; j < n; ++j) {
    if (m > 0 && !(tech.inputs.col(j).array() > 0.0).any()) {
      out.push_back({"no-positive-input", "DMU has no positive input: " + label(j)});
    }
    if (s > 0 && !(tech.outputs.col(j).array() > 0.0).any()) {
      out.push_back({"no-positive-output", "DMU has no positive output: " + label(j)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zeros in data

std::optional<ZeroOutputPolicy> parse_zero_output_policy(std::string_view text) {
  const std::string t = lowercase(text);
  if (t == "potential") return ZeroOutputPolicy::Potential;
  if (t == "impossible") return ZeroOutputPolicy::Impossible;
  return std::nullopt;
}

std::string to_string(ZeroOutputPolicy policy) {
  return policy == ZeroOutputPolicy::Potential ? "potential" : "impossible";
}

ZeroOutputPolicy ZeroPolicy::for_output(Index r) const {
  if (r < static_cast<Index>(per_output.size()) && per_output[r]) return *per_output[r];
  return default_policy;
}

std::string to_string(ZeroAdjustment::Kind kind) {
  switch (kind) {
    case ZeroAdjustment::Kind::InputFrozen: return "input-frozen";
    case ZeroAdjustment::Kind::OutputReplaced: return "output-replaced";
    case ZeroAdjustment::Kind::OutputExcluded: return "output-excluded";
  }
  return "?";
}

Index SubjectZeros::active_inputs() const {
  return static_cast<Index>(std::count(frozen_inputs.begin(), frozen_inputs.end(), false));
}

Index SubjectZeros::active_outputs() const {
  return static_cast<Index>(std::count(excluded_outputs.begin(), excluded_outputs.end(), false));
}

SubjectZeros SubjectZeros::none(Index m, Index s) {
  return {std::vector<bool>(m, false), std::vector<bool>(s, false)};
}

SubjectZeros SubjectZeros::from_activity(const Activity& a) {
  SubjectZeros z = none(a.num_inputs(), a.num_outputs());
  for (Index i = 0; i < a.num_inputs(); ++i) z.frozen_inputs[i] = a.x[i] == 0.0;
  for (Index r = 0; r < a.num_outputs(); ++r) z.excluded_outputs[r] = a.y[r] == 0.0;
  return z;
}

SubjectZeros ZeroAdjustmentLog::for_dmu(Index j, Index m, Index s) const {
  SubjectZeros z = SubjectZeros::none(m, s);
  for (const auto& e : entries) {
    if (e.dmu != j) continue;
    if (e.kind == ZeroAdjustment::Kind::InputFrozen) z.frozen_inputs[e.variable] = true;
    if (e.kind == ZeroAdjustment::Kind::OutputExcluded) z.excluded_outputs[e.variable] = true;
  }
  return z;
}

std::pair<Technology, ZeroAdjustmentLog> preprocess_zeros(const Technology& tech, const ZeroPolicy& policy) {
  Technology out = tech;
  ZeroAdjustmentLog log;
  const Index n = tech.num_dmus();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < tech.num_inputs(); ++i) {
      if (tech.inputs(i, j) == 0.0) {
        log.entries.push_back({ZeroAdjustment::Kind::InputFrozen, j, i, 0.0, 0.0});
      }
    }
  }
  for (Index r = 0; r < tech.num_outputs(); ++r) {
    double row_min = kInfinity;
    for (Index j = 0; j < n; ++j) {
      if (tech.outputs(r, j) > 0.0) row_min = std::min(row_min, tech.outputs(r, j));
    }
    for (Index j = 0; j < n; ++j) {
      if (tech.outputs(r, j) != 0.0) continue;
      if (policy.for_output(r) == ZeroOutputPolicy::Potential && std::isfinite(row_min)) {
        const double replacement = row_min * policy.replacement_factor;
        out.outputs(r, j) = replacement;
        log.entries.push_back({ZeroAdjustment::Kind::OutputReplaced, j, r, 0.0, replacement});
      } else {
        log.entries.push_back({ZeroAdjustment::Kind::OutputExcluded, j, r, 0.0, 0.0});
      }
    }
  }
  return {std::move(out), std::move(log)};
}

// ---------------------------------------------------------------------------
// Dominance and membership

bool dominates(const Activity& a, const Activity& b, double tol) {
  if (a.x.size() != b.x.size() || a.y.size() != b.y.size()) {
    throw std::invalid_argument("dominates: activities have different dimensions");
  }
  return (a.x.array() <= b.x.array() + tol).all() && (a.y.array() >= b.y.array() - tol).all();
}

void append_rts_rows(LpProblem& lp, const ReturnsToScale& rts, Index offset, Index n) {
  Vector row = Vector::Zero(lp.num_vars());
  row.segment(offset, n).setOnes();
  switch (rts.kind) {
    case RtsKind::Crs:
      break;
    case RtsKind::Vrs:
      lp.add_row(row, Relation::Equal, 1.0);
      break;
    case RtsKind::Nirs:
      lp.add_row(row, Relation::LessEqual, 1.0);
      break;
    case RtsKind::Ndrs:
      lp.add_row(row, Relation::GreaterEqual, 1.0);
      break;
    case RtsKind::Grs:
      if (rts.lower > 0.0) lp.add_row(row, Relation::GreaterEqual, rts.lower);
      if (std::isfinite(rts.upper)) lp.add_row(row, Relation::LessEqual, rts.upper);
      break;
  }
}

LpProblem membership_lp(const Technology& tech, const Activity& a) {
  if (a.num_inputs() != tech.num_inputs() || a.num_outputs() != tech.num_outputs()) {
    throw std::invalid_argument("membership_lp: activity dimensions do not match the technology");
  }
  const Index n = tech.num_dmus();
  LpProblem lp(n, Sense::Minimize);
  for (Index i = 0; i < tech.num_inputs(); ++i) {
    lp.add_row(tech.inputs.row(i).transpose(), Relation::LessEqual, a.x[i]);
  }
  for (Index r = 0; r < tech.num_outputs(); ++r) {
    lp.add_row(tech.outputs.row(r).transpose(), Relation::GreaterEqual, a.y[r]);
  }
  append_rts_rows(lp, tech.rts, 0, n);
  return lp;
}

bool in_technology(const Technology& tech, const Activity& a) { return feasible(membership_lp(tech, a)); }

std::string to_string(Model model) { return model == Model::Lo ? "lo" : "qo"; }

}  // namespace deaorient
