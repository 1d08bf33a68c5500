#include "deaorient/oracle.hpp"

#include "deaorient/lo.hpp"
#include "deaorient/qo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace deaorient::oracle {

namespace {

// a x <= u' b, where b is the right-hand side of the original rows and
// origin is the set of inequalities the row was combined from.
struct Ineq {
  RationalRow a;
  RationalRow u;
  std::uint64_t origin = 0;
};

// The system is feasible for a given b iff u' b >= 0 (or = 0) for every
// certificate.
struct Certificate {
  RationalRow u;
  bool equality = false;
};

bool is_zero(const RationalRow& v) {
  for (const auto& c : v) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

void scale_row(Ineq& row, const mpq_class& scale) {
  for (auto& v : row.a) v /= scale;
  for (auto& v : row.u) v /= scale;
}

std::string key_of(const Ineq& row) {
  std::string key;
  for (const auto* v : {&row.a, &row.u}) {
    for (const auto& c : *v) {
      key += c.get_str();
      key += ',';
    }
    key += ';';
  }
  return key;
}

// Normalizes by the first nonzero coefficient, moves rows without variables
// into `out` and drops duplicates, keeping the smaller origin set.
void tidy(std::vector<Ineq>& rows, std::vector<Certificate>& out) {
  std::map<std::string, Ineq> unique;
  for (auto& row : rows) {
    if (is_zero(row.a)) {
      if (!is_zero(row.u)) out.push_back({std::move(row.u), false});
      continue;
    }
    for (const auto& c : row.a) {
      if (sgn(c) != 0) {
        scale_row(row, abs(c));
        break;
      }
    }
    auto key = key_of(row);
    auto it = unique.find(key);
    if (it == unique.end()) {
      unique.emplace(std::move(key), std::move(row));
    } else if (std::popcount(row.origin) < std::popcount(it->second.origin)) {
      it->second = std::move(row);
    }
  }
  rows.clear();
  for (auto& [key, row] : unique) rows.push_back(std::move(row));
}

void eliminate(std::vector<Ineq> rows, std::size_t nvars, std::vector<Certificate>& out) {
  std::vector<bool> alive(nvars, true);
  int eliminated = 0;
  while (true) {
    tidy(rows, out);

    std::size_t best = nvars;
    std::size_t best_cost = 0;
    for (std::size_t k = 0; k < nvars; ++k) {
      if (!alive[k]) continue;
      std::size_t pos = 0;
      std::size_t neg = 0;
      for (const auto& row : rows) {
        pos += sgn(row.a[k]) > 0;
        neg += sgn(row.a[k]) < 0;
      }
      const std::size_t cost = pos * neg;
      if (best == nvars || cost < best_cost) {
        best = k;
        best_cost = cost;
      }
    }
    if (best == nvars) return;

    const std::size_t k = best;
    alive[k] = false;
    const bool present = std::any_of(rows.begin(), rows.end(), [&](const Ineq& row) { return sgn(row.a[k]) != 0; });
    if (!present) continue;
    ++eliminated;
    std::vector<Ineq> next;
    std::vector<const Ineq*> pos;
    std::vector<const Ineq*> neg;
    for (const auto& row : rows) {
      const int s = sgn(row.a[k]);
      if (s > 0) {
        pos.push_back(&row);
      } else if (s < 0) {
        neg.push_back(&row);
      } else {
        next.push_back(row);
      }
    }
    for (const Ineq* p : pos) {
      for (const Ineq* q : neg) {
        const std::uint64_t origin = p->origin | q->origin;
        if (std::popcount(origin) > eliminated + 1) continue;
        const mpq_class wp = -q->a[k];
        const mpq_class wq = p->a[k];
        Ineq combo;
        combo.a.resize(nvars);
        for (std::size_t j = 0; j < nvars; ++j) combo.a[j] = wp * p->a[j] + wq * q->a[j];
        combo.a[k] = 0;
        combo.u.resize(p->u.size());
        for (std::size_t j = 0; j < p->u.size(); ++j) combo.u[j] = wp * p->u[j] + wq * q->u[j];
        combo.origin = origin;
        next.push_back(std::move(combo));
      }
    }
    rows = std::move(next);
  }
}

void substitute(RationalRow& a, RationalRow& u, const RationalRow& eq, const RationalRow& eq_u, std::size_t k) {
  if (sgn(a[k]) == 0) return;
  const mpq_class factor = a[k] / eq[k];
  for (std::size_t j = 0; j < a.size(); ++j) a[j] -= factor * eq[j];
  a[k] = 0;
  for (std::size_t j = 0; j < u.size(); ++j) u[j] -= factor * eq_u[j];
}

// Fourier-Motzkin elimination with a symbolic right-hand side.
class FmSystem {
 public:
  FmSystem(const std::vector<RationalRow>& A, const std::vector<Relation>& relations, const std::vector<bool>& nonneg) {
    const std::size_t nvars = nonneg.size();
    const std::size_t rows = A.size();
    if (relations.size() != rows) throw std::invalid_argument("fm_feasible: row counts disagree");
    for (const auto& row : A) {
      if (row.size() != nvars) throw std::invalid_argument("fm_feasible: row length differs from the variable count");
    }
    if (static_cast<Index>(nvars) > kMaxVariables || static_cast<Index>(rows) > kMaxConstraints) {
      throw std::invalid_argument("fm_feasible: instance exceeds the oracle caps (" + std::to_string(kMaxVariables) +
                                  " variables, " + std::to_string(kMaxConstraints) + " constraints)");
    }
    num_rows_ = rows;

    auto unit = [&](std::size_t i, int sign) {
      RationalRow u(rows, mpq_class(0));
      u[i] = sign;
      return u;
    };
    std::vector<Ineq> ineqs;
    std::vector<std::pair<RationalRow, RationalRow>> eqs;
    for (std::size_t i = 0; i < rows; ++i) {
      switch (relations[i]) {
        case Relation::LessEqual:
          ineqs.push_back({A[i], unit(i, 1), 0});
          break;
        case Relation::GreaterEqual: {
          Ineq row{A[i], unit(i, -1), 0};
          for (auto& v : row.a) v = -v;
          ineqs.push_back(std::move(row));
          break;
        }
        case Relation::Equal:
          eqs.emplace_back(A[i], unit(i, 1));
          break;
      }
    }

    std::vector<bool> sign_constrained = nonneg;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      const auto [eq, eq_u] = eqs[e];
      std::size_t pivot = nvars;
      for (std::size_t k = 0; k < nvars; ++k) {
        if (sgn(eq[k]) == 0) continue;
        if (pivot == nvars || (!sign_constrained[k] && sign_constrained[pivot])) pivot = k;
      }
      if (pivot == nvars) {
        if (!is_zero(eq_u)) certificates_.push_back({eq_u, true});
        continue;
      }
      for (auto& row : ineqs) substitute(row.a, row.u, eq, eq_u, pivot);
      for (std::size_t f = e + 1; f < eqs.size(); ++f) substitute(eqs[f].first, eqs[f].second, eq, eq_u, pivot);
      if (sign_constrained[pivot]) {
        // x_pivot = (eq_b - sum_{j != pivot} eq_j x_j) / eq_pivot >= 0
        Ineq row;
        row.a.resize(nvars);
        for (std::size_t j = 0; j < nvars; ++j) row.a[j] = j == pivot ? mpq_class(0) : eq[j] / eq[pivot];
        row.u.resize(rows);
        for (std::size_t j = 0; j < rows; ++j) row.u[j] = eq_u[j] / eq[pivot];
        ineqs.push_back(std::move(row));
        sign_constrained[pivot] = false;
      }
    }
    for (std::size_t k = 0; k < nvars; ++k) {
      if (!sign_constrained[k]) continue;
      Ineq row;
      row.a.assign(nvars, mpq_class(0));
      row.a[k] = -1;
      row.u.assign(rows, mpq_class(0));
      ineqs.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < ineqs.size(); ++i) ineqs[i].origin = std::uint64_t{1} << i;
    eliminate(std::move(ineqs), nvars, certificates_);
  }

  bool feasible(const RationalRow& b) const {
    if (b.size() != num_rows_) throw std::invalid_argument("fm_feasible: row counts disagree");
    for (const auto& c : certificates_) {
      mpq_class value = 0;
      for (std::size_t i = 0; i < num_rows_; ++i) {
        if (sgn(c.u[i]) != 0) value += c.u[i] * b[i];
      }
      if (c.equality ? sgn(value) != 0 : sgn(value) < 0) return false;
    }
    return true;
  }

 private:
  std::size_t num_rows_ = 0;
  std::vector<Certificate> certificates_;
};

}  // namespace

bool fm_feasible(const std::vector<RationalRow>& A, const std::vector<Relation>& relations, const RationalRow& b,
                 const std::vector<bool>& nonneg) {
  if (A.size() != b.size()) throw std::invalid_argument("fm_feasible: row counts disagree");
  return FmSystem(A, relations, nonneg).feasible(b);
}

bool fm_feasible(const Matrix& A, const std::vector<Relation>& relations, const Vector& b,
                 const std::vector<bool>& nonneg) {
  if (A.rows() != b.size() || A.cols() != static_cast<Index>(nonneg.size())) {
    throw std::invalid_argument("fm_feasible: dimensions disagree");
  }
  std::vector<RationalRow> rows(A.rows(), RationalRow(A.cols()));
  RationalRow rhs(A.rows());
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) rows[i][j] = mpq_class(A(i, j));
    rhs[i] = mpq_class(b[i]);
  }
  return fm_feasible(rows, relations, rhs, nonneg);
}

bool fm_feasible(const LpProblem& lp) {
  lp.check();
  const Index n = lp.num_vars();
  std::vector<RationalRow> rows;
  std::vector<Relation> rels;
  RationalRow rhs;
  for (Index i = 0; i < lp.num_rows(); ++i) {
    RationalRow row(n);
    for (Index j = 0; j < n; ++j) row[j] = mpq_class(lp.A(i, j));
    rows.push_back(std::move(row));
    rels.push_back(lp.relations[i]);
    rhs.emplace_back(lp.rhs[i]);
  }
  std::vector<bool> nonneg(n, false);
  auto bound_row = [&](Index j, Relation rel, double value) {
    RationalRow row(n, mpq_class(0));
    row[j] = 1;
    rows.push_back(std::move(row));
    rels.push_back(rel);
    rhs.emplace_back(value);
  };
  for (Index j = 0; j < n; ++j) {
    if (lp.lower[j] == 0.0) {
      nonneg[j] = true;
    } else if (std::isfinite(lp.lower[j])) {
      bound_row(j, Relation::GreaterEqual, lp.lower[j]);
    }
    if (std::isfinite(lp.upper[j])) bound_row(j, Relation::LessEqual, lp.upper[j]);
  }
  return fm_feasible(rows, rels, rhs, nonneg);
}

double brute_beta(const Technology& tech, const Activity& subject, const Orientation& d, Model model,
                  int iterations) {
  validate_orientation(d, subject);
  const Orientation de = effective_orientation(d, subject);
  const Index n = tech.num_dmus();
  const Index m = tech.num_inputs();
  const Index s = tech.num_outputs();

  std::vector<RationalRow> rows;
  std::vector<Relation> rels;
  for (Index i = 0; i < m; ++i) {
    RationalRow row(n);
    for (Index j = 0; j < n; ++j) row[j] = mpq_class(tech.inputs(i, j));
    rows.push_back(std::move(row));
    rels.push_back(Relation::LessEqual);
  }
  for (Index r = 0; r < s; ++r) {
    RationalRow row(n);
    for (Index j = 0; j < n; ++j) row[j] = mpq_class(tech.outputs(r, j));
    rows.push_back(std::move(row));
    rels.push_back(Relation::GreaterEqual);
  }
  RationalRow rts_rhs;
  auto rts_row = [&](Relation rel, double value) {
    rows.emplace_back(n, mpq_class(1));
    rels.push_back(rel);
    rts_rhs.emplace_back(value);
  };
  switch (tech.rts.kind) {
    case RtsKind::Crs: break;
    case RtsKind::Vrs: rts_row(Relation::Equal, 1.0); break;
    case RtsKind::Nirs: rts_row(Relation::LessEqual, 1.0); break;
    case RtsKind::Ndrs: rts_row(Relation::GreaterEqual, 1.0); break;
    case RtsKind::Grs:
      if (tech.rts.lower > 0.0) rts_row(Relation::GreaterEqual, tech.rts.lower);
      if (std::isfinite(tech.rts.upper)) rts_row(Relation::LessEqual, tech.rts.upper);
      break;
  }
  const FmSystem system(rows, rels, std::vector<bool>(n, true));

  auto feasible_at = [&](const mpq_class& beta) {
    RationalRow rhs;
    for (Index i = 0; i < m; ++i) rhs.push_back(mpq_class(subject.x[i]) * (1 - beta * mpq_class(de.d_minus[i])));
    for (Index r = 0; r < s; ++r) {
      const mpq_class y(subject.y[r]);
      const mpq_class step = beta * mpq_class(de.d_plus[r]);
      if (model == Model::Lo) {
        rhs.push_back(y * (1 + step));
      } else {
        if (sgn(y) != 0 && step >= 1) return false;
        rhs.push_back(sgn(y) == 0 ? mpq_class(0) : mpq_class(y / (1 - step)));
      }
    }
    rhs.insert(rhs.end(), rts_rhs.begin(), rts_rhs.end());
    return system.feasible(rhs);
  };

  if (!feasible_at(mpq_class(0))) throw std::invalid_argument("brute_beta: subject is not in the technology");

  const double dmax = model == Model::Lo ? (m > 0 ? de.d_minus.maxCoeff() : 0.0) : de.inf_norm();
  mpq_class lo(0);
  mpq_class hi;
  if (dmax > 0.0) {
    hi = 1 / mpq_class(dmax);
    if (feasible_at(hi)) return hi.get_d();
  } else {
    hi = 1;
    int doublings = 0;
    while (feasible_at(hi)) {
      lo = hi;
      hi *= 2;
      if (++doublings > 64) return kInfinity;
    }
  }
  for (int it = 0; it < iterations; ++it) {
    const mpq_class mid = (lo + hi) / 2;
    if (feasible_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mpq_class((lo + hi) / 2).get_d();
}

double radial_input_efficiency(const Technology& tech, const Activity& subject) {
  const Index n = tech.num_dmus();
  LpProblem lp(n + 1, Sense::Minimize);
  lp.cost[0] = 1.0;
  Vector row(n + 1);
  for (Index i = 0; i < tech.num_inputs(); ++i) {
    row[0] = -subject.x[i];
    row.tail(n) = tech.inputs.row(i).transpose();
    lp.add_row(row, Relation::LessEqual, 0.0);
  }
  for (Index r = 0; r < tech.num_outputs(); ++r) {
    row[0] = 0.0;
    row.tail(n) = tech.outputs.row(r).transpose();
    lp.add_row(row, Relation::GreaterEqual, subject.y[r]);
  }
  append_rts_rows(lp, tech.rts, 1, n);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw SolverError("radial input program has no optimum");
  return sol.objective;
}

PairCheck check_pair(const Technology& tech, const Orientation& d, Model model, const Activity& a,
                     const Activity& better, const ScanOptions& opts) {
  EvalOptions eo;
  eo.second_stage = false;
  auto run = [&](const Activity& act) {
    return model == Model::Lo ? evaluate_lo_external(tech, act, d, eo) : evaluate_qo_external(tech, act, d, eo);
  };
  const Evaluation ea = run(a);
  const Evaluation eb = run(better);
  PairCheck pc{a, better, ea.beta, eb.beta, ea.rho, eb.rho};
  const bool beta_ok = eb.beta <= ea.beta + opts.tol;
  const bool rho_ok = eb.rho >= ea.rho - opts.tol;
  pc.beta_violation = opts.corrupt_comparator ? beta_ok : !beta_ok;
  pc.rho_violation = opts.corrupt_comparator ? rho_ok : !rho_ok;
  return pc;
}

std::vector<PairCheck> monotonicity_scan(const Technology& tech, const Orientation& d, Model model, int samples,
                                         std::uint64_t seed, const ScanOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, tech.num_dmus() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<PairCheck> violations;
  int drawn = 0;
  for (int attempt = 0; drawn < samples && attempt < 10 * samples; ++attempt) {
    const Activity base = tech.activity(pick(rng));
    Activity a = base;
    Activity better = base;
    for (Index i = 0; i < base.num_inputs(); ++i) {
      const double f = 1.0 + 0.5 * unit(rng);
      a.x[i] = base.x[i] * f;
      better.x[i] = base.x[i] * (1.0 + (f - 1.0) * unit(rng));
    }
    for (Index r = 0; r < base.num_outputs(); ++r) {
      const double g = 0.6 + 0.4 * unit(rng);
      a.y[r] = base.y[r] * g;
      better.y[r] = base.y[r] * (g + (1.0 - g) * unit(rng));
    }
    if (!in_technology(tech, a) || !in_technology(tech, better)) continue;
    ++drawn;
    PairCheck pc = check_pair(tech, d, model, a, better, opts);
    if (pc.violated()) violations.push_back(std::move(pc));
  }
  return violations;
}

}  // namespace deaorient::oracle
