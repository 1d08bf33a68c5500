#pragma once

#include "deaorient/core.hpp"

#include <random>

namespace fixtures {

using namespace deaorient;

// Five DMUs, two inputs, two outputs.
inline Technology five_dmu(ReturnsToScale rts = ReturnsToScale::crs()) {
  Matrix X(2, 5);
  Matrix Y(2, 5);
  X << 1, 1, 1, 2, 2,
       1, 2, 2, 1, 1;
  Y << 4, 1, 2, 1, 2,
       4, 2, 1, 2, 1;
  return Technology(X, Y, rts, {"A", "B", "C", "D", "E"});
}

inline Activity activity(std::initializer_list<double> x, std::initializer_list<double> y) {
  Activity a{Vector(static_cast<Index>(x.size())), Vector(static_cast<Index>(y.size()))};
  Index k = 0;
  for (double v : x) a.x[k++] = v;
  k = 0;
  for (double v : y) a.y[k++] = v;
  return a;
}

inline Orientation orient(std::initializer_list<double> dm, std::initializer_list<double> dp) {
  const Activity a = activity(dm, dp);
  return {a.x, a.y};
}

inline Orientation ones(Index m, Index s) { return Orientation::uniform(m, s, 1.0, 1.0); }

struct Random {
  std::mt19937_64 rng;
  explicit Random(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

  Matrix matrix(Index rows, Index cols, double lo, double hi) {
    Matrix M(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) M(i, j) = uniform(lo, hi);
    }
    return M;
  }

  // n <= max_n DMUs, m, s <= max_vars, data in [0.1, 10].
  Technology technology(Index max_n, Index max_vars, ReturnsToScale rts = ReturnsToScale::crs()) {
    const Index n = integer(2, max_n);
    const Index m = integer(1, max_vars);
    const Index s = integer(1, max_vars);
    return Technology(matrix(m, n, 0.1, 10.0), matrix(s, n, 0.1, 10.0), rts);
  }

  // Nonnegative, some coefficients zero, never all zero.
  Orientation orientation(Index m, Index s, double zero_prob = 0.3) {
    Orientation d{Vector::Zero(m), Vector::Zero(s)};
    while (d.is_zero()) {
      for (Index i = 0; i < m; ++i) d.d_minus[i] = coin(zero_prob) ? 0.0 : uniform(0.1, 2.0);
      for (Index r = 0; r < s; ++r) d.d_plus[r] = coin(zero_prob) ? 0.0 : uniform(0.1, 2.0);
    }
    return d;
  }

  ReturnsToScale rts() {
    switch (integer(0, 4)) {
      case 0: return ReturnsToScale::crs();
      case 1: return ReturnsToScale::vrs();
      case 2: return ReturnsToScale::nirs();
      case 3: return ReturnsToScale::ndrs();
      default: return ReturnsToScale::grs(uniform(0.2, 1.0), uniform(1.0, 3.0));
    }
  }
};

}  // namespace fixtures
