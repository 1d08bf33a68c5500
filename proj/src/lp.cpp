#include "deaorient/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace deaorient {

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEqual: return ">=";
  }
  return "?";
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

LpProblem::LpProblem(Index num_vars, Sense s)
    : sense(s),
      cost(Vector::Zero(num_vars)),
      A(0, num_vars),
      rhs(0),
      lower(Vector::Zero(num_vars)),
      upper(Vector::Constant(num_vars, kInfinity)) {}

void LpProblem::add_row(const Eigen::Ref<const Vector>& coeffs, Relation rel, double b) {
  if (coeffs.size() != num_vars()) {
    throw std::invalid_argument("LpProblem::add_row: coefficient count does not match variable count");
  }
  const Index r = A.rows();
  A.conservativeResize(r + 1, Eigen::NoChange);
  A.row(r) = coeffs.transpose();
  rhs.conservativeResize(r + 1);
  rhs[r] = b;
  relations.push_back(rel);
}

void LpProblem::check() const {
  const Index n = cost.size();
  if (A.cols() != n || lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("LpProblem: column dimensions disagree");
  }
  if (rhs.size() != A.rows() || static_cast<Index>(relations.size()) != A.rows()) {
    throw std::invalid_argument("LpProblem: row dimensions disagree");
  }
  if (!cost.allFinite() || !A.allFinite() || !rhs.allFinite()) {
    throw std::invalid_argument("LpProblem: non-finite entry in cost, matrix or rhs");
  }
  for (Index j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] == kInfinity || upper[j] == -kInfinity) {
      throw std::invalid_argument("LpProblem: invalid variable bound");
    }
  }
}

namespace {

// Standard form: min c's s.t. S s = b (b >= 0), s >= 0, followed by one
// artificial column per row that lacks a natural basic slack.
class Simplex {
 public:
  Simplex(const LpProblem& p, const SimplexOptions& opts) : p_(p), opts_(opts) { build(); }

  // Returns the phase-1 optimum.
  double phase1() {
    const Index rows = num_rows_;
    T_.row(rows).setZero();
    for (Index k = 0; k < num_art_; ++k) T_(rows, num_std_ + k) = 1.0;
    for (Index i = 0; i < rows; ++i) {
      if (basis_[i] >= num_std_) T_.row(rows) -= T_.row(i);
    }
    phase_ = 1;
    run();
    const double infeas = -T_(rows, total_cols_);
    return infeas < 0.0 ? 0.0 : infeas;
  }

  // Pivots basic artificials out where possible. Rows that cannot be
  // cleared are linearly dependent and keep a zero-valued artificial.
  void purge_artificials() {
    for (Index i = 0; i < num_rows_; ++i) {
      if (basis_[i] < num_std_) continue;
      Index best = -1;
      double best_abs = opts_.pivot_tol;
      for (Index j = 0; j < num_std_; ++j) {
        const double v = std::abs(T_(i, j));
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      if (best >= 0) pivot(i, best);
    }
  }

  LpStatus phase2() {
    const Index rows = num_rows_;
    T_.row(rows).setZero();
    for (Index j = 0; j < num_std_; ++j) T_(rows, j) = c_[j];
    for (Index i = 0; i < rows; ++i) {
      const Index b = basis_[i];
      const double cb = b < num_std_ ? c_[b] : 0.0;
      if (cb != 0.0) T_.row(rows) -= cb * T_.row(i);
    }
    phase_ = 2;
    return run();
  }

  LpSolution extract(LpStatus status, double infeas) const {
    LpSolution sol;
    sol.status = status;
    sol.iterations = iterations_;
    sol.infeasibility = infeas;
    const Index n = p_.num_vars();
    if (status != LpStatus::Optimal) return sol;

    Vector s = Vector::Zero(total_cols_);
    for (Index i = 0; i < num_rows_; ++i) s[basis_[i]] = std::max(0.0, T_(i, total_cols_));

    sol.primal = Vector::Zero(n);
    for (Index k = 0; k < static_cast<Index>(col_var_.size()); ++k) {
      sol.primal[col_var_[k]] += col_sign_[k] * s[k];
    }
    for (Index j = 0; j < n; ++j) {
      if (std::isfinite(p_.lower[j])) sol.primal[j] += p_.lower[j];
    }
    sol.objective = p_.cost.dot(sol.primal);

    // Duals from B' u = c_B on the untouched standard-form matrix.
    Matrix B(num_rows_, num_rows_);
    Vector cb(num_rows_);
    for (Index i = 0; i < num_rows_; ++i) {
      const Index b = basis_[i];
      if (b < num_std_) {
        B.col(i) = S_.col(b);
        cb[i] = c_[b];
      } else {
        B.col(i) = Vector::Unit(num_rows_, art_row_[b - num_std_]);
        cb[i] = 0.0;
      }
    }
    const Vector u = B.transpose().partialPivLu().solve(cb);
    const double out_sign = p_.sense == Sense::Maximize ? -1.0 : 1.0;
    const Index user_rows = p_.num_rows();
    sol.duals.resize(user_rows);
    for (Index i = 0; i < user_rows; ++i) {
      sol.duals[i] = out_sign * row_sign_[i] * u[i];
    }
    sol.reduced_costs = p_.cost - p_.A.transpose() * sol.duals;

    std::vector<bool> is_basic(total_cols_, false);
    for (Index i = 0; i < num_rows_; ++i) is_basic[basis_[i]] = true;
    for (Index j = 0; j < num_std_; ++j) {
      if (!is_basic[j] && std::abs(T_(num_rows_, j)) <= opts_.optimality_tol) {
        sol.alternative_optima = true;
        break;
      }
    }
    return sol;
  }

 private:
  void build() {
    const Index n = p_.num_vars();
    const Index m = p_.num_rows();

    // Structural columns.
    Vector shift = Vector::Zero(n);
    for (Index j = 0; j < n; ++j) {
      if (std::isfinite(p_.lower[j])) {
        shift[j] = p_.lower[j];
        col_var_.push_back(j);
        col_sign_.push_back(1.0);
      } else {
        col_var_.push_back(j);
        col_sign_.push_back(1.0);
        col_var_.push_back(j);
        col_sign_.push_back(-1.0);
      }
    }
    const Index num_struct = static_cast<Index>(col_var_.size());

    // Rows: user rows, then finite upper bounds.
    struct Row {
      Vector a;
      Relation rel;
      double b;
    };
    std::vector<Row> rows;
    rows.reserve(m + n);
    for (Index i = 0; i < m; ++i) {
      Row r{Vector::Zero(num_struct), p_.relations[i], p_.rhs[i] - p_.A.row(i).dot(shift)};
      for (Index k = 0; k < num_struct; ++k) r.a[k] = col_sign_[k] * p_.A(i, col_var_[k]);
      rows.push_back(std::move(r));
    }
    for (Index k = 0; k < num_struct; ++k) {
      const Index j = col_var_[k];
      if (col_sign_[k] < 0.0 || !std::isfinite(p_.upper[j])) continue;
      Row r{Vector::Zero(num_struct), Relation::LessEqual, p_.upper[j] - shift[j]};
      r.a[k] = 1.0;
      if (!std::isfinite(p_.lower[j])) r.a[k + 1] = -1.0;
      rows.push_back(std::move(r));
    }

    num_rows_ = static_cast<Index>(rows.size());
    row_sign_.assign(num_rows_, 1.0);
    Index num_slack = 0;
    for (Index i = 0; i < num_rows_; ++i) {
      Row& r = rows[i];
      if (r.b < 0.0) {
        r.a = -r.a;
        r.b = -r.b;
        row_sign_[i] = -1.0;
        if (r.rel == Relation::LessEqual) {
          r.rel = Relation::GreaterEqual;
        } else if (r.rel == Relation::GreaterEqual) {
          r.rel = Relation::LessEqual;
        }
      }
      if (r.rel != Relation::Equal) ++num_slack;
      if (r.rel != Relation::LessEqual) ++num_art_;
    }
    num_std_ = num_struct + num_slack;
    total_cols_ = num_std_ + num_art_;

    S_ = Matrix::Zero(num_rows_, num_std_);
    b_ = Vector::Zero(num_rows_);
    T_ = Matrix::Zero(num_rows_ + 1, total_cols_ + 1);
    basis_.assign(num_rows_, -1);
    art_row_.clear();
    Index slack = num_struct;
    Index art = num_std_;
    for (Index i = 0; i < num_rows_; ++i) {
      const Row& r = rows[i];
      S_.row(i).head(num_struct) = r.a.transpose();
      b_[i] = r.b;
      if (r.rel == Relation::LessEqual) {
        S_(i, slack) = 1.0;
        basis_[i] = slack++;
      } else if (r.rel == Relation::GreaterEqual) {
        S_(i, slack++) = -1.0;
      }
      T_.row(i).head(num_std_) = S_.row(i);
      T_(i, total_cols_) = r.b;
      if (r.rel != Relation::LessEqual) {
        T_(i, art) = 1.0;
        art_row_.push_back(i);
        basis_[i] = art++;
      }
    }

    c_ = Vector::Zero(num_std_);
    const double sense_sign = p_.sense == Sense::Maximize ? -1.0 : 1.0;
    for (Index k = 0; k < num_struct; ++k) c_[k] = sense_sign * col_sign_[k] * p_.cost[col_var_[k]];
  }

  Index entering(bool bland) const {
    const Index limit = phase_ == 1 ? total_cols_ : num_std_;
    const auto obj = T_.row(num_rows_);
    Index best = -1;
    double best_val = -opts_.optimality_tol;
    for (Index j = 0; j < limit; ++j) {
      if (obj[j] < best_val) {
        best = j;
        if (bland) break;
        best_val = obj[j];
      }
    }
    return best;
  }

  Index leaving(Index col) const {
    Index best = -1;
    double best_ratio = kInfinity;
    for (Index i = 0; i < num_rows_; ++i) {
      const double a = T_(i, col);
      if (a <= opts_.pivot_tol) continue;
      const double ratio = T_(i, total_cols_) / a;
      if (best < 0 || ratio < best_ratio - 1e-12 * std::max(1.0, std::abs(best_ratio))) {
        best = i;
        best_ratio = ratio;
      } else if (std::abs(ratio - best_ratio) <= 1e-12 * std::max(1.0, std::abs(best_ratio)) &&
                 basis_[i] < basis_[best]) {
        best = i;
      }
    }
    return best;
  }

  void pivot(Index row, Index col) {
    T_.row(row) /= T_(row, col);
    for (Index i = 0; i <= num_rows_; ++i) {
      if (i == row) continue;
      const double f = T_(i, col);
      if (f != 0.0) T_.row(i) -= f * T_.row(row);
    }
    for (Index i = 0; i < num_rows_; ++i) {
      if (std::abs(T_(i, total_cols_)) < 1e-14) T_(i, total_cols_) = 0.0;
    }
    basis_[row] = col;
    ++iterations_;
  }

  LpStatus run() {
    bool bland = false;
    int degenerate = 0;
    while (true) {
      if (iterations_ >= opts_.max_iterations) {
        throw std::runtime_error("simplex: iteration limit reached");
      }
      const Index col = entering(bland);
      if (col < 0) return LpStatus::Optimal;
      const Index row = leaving(col);
      if (row < 0) return LpStatus::Unbounded;
      const double step = T_(row, total_cols_) / T_(row, col);
      if (step <= opts_.pivot_tol) {
        if (++degenerate >= opts_.bland_after_degenerate) bland = true;
      } else {
        degenerate = 0;
      }
      pivot(row, col);
    }
  }

  const LpProblem& p_;
  SimplexOptions opts_;
  std::vector<Index> col_var_;
  std::vector<double> col_sign_;
  std::vector<double> row_sign_;
  std::vector<Index> art_row_;
  Index num_rows_ = 0;
  Index num_std_ = 0;
  Index num_art_ = 0;
  Index total_cols_ = 0;
  Matrix S_;
  Vector b_;
  Vector c_;
  Matrix T_;
  std::vector<Index> basis_;
  int phase_ = 1;
  int iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& opts) {
  problem.check();
  Simplex simplex(problem, opts);
  const double infeas = simplex.phase1();
  if (infeas > opts.feasibility_tol) return simplex.extract(LpStatus::Infeasible, infeas);
  simplex.purge_artificials();
  const LpStatus status = simplex.phase2();
  return simplex.extract(status, infeas);
}

bool feasible(const LpProblem& problem, const SimplexOptions& opts) {
  problem.check();
  Simplex simplex(problem, opts);
  return simplex.phase1() <= opts.feasibility_tol;
}

}  // namespace deaorient
