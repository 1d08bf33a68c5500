#pragma once

#include "fixtures.hpp"

#include <array>
#include <string>
#include <vector>

// Reference results for the five-DMU example (three decimals).
namespace expected {

using namespace deaorient;

struct Row {
  Index dmu;
  double beta;
  double rho;
  std::array<double, 4> target;      // x1, x2, y1, y2
  std::array<double, 4> projection;  // x1, x2, y1, y2
};

struct Table {
  std::string name;
  Model model;
  Orientation d;
  std::vector<Row> rows;
};

inline std::vector<Table> tables() {
  const Orientation case1 = fixtures::orient({1, 1}, {1, 1});
  const Orientation case2 = fixtures::orient({1, 1}, {0.5, 0.5});
  const Orientation case3 = fixtures::orient({1, 0.5}, {1, 0.5});
  return {
      {"case1-lo", Model::Lo, case1,
       {{1, 0.333, 0.5, {0.667, 1.333, 1.333, 2.667}, {0.667, 0.667, 2.667, 2.667}},
        {2, 0.333, 0.5, {0.667, 1.333, 2.667, 1.333}, {0.667, 0.667, 2.667, 2.667}},
        {3, 0.333, 0.5, {1.333, 0.667, 1.333, 2.667}, {0.667, 0.667, 2.667, 2.667}},
        {4, 0.333, 0.5, {1.333, 0.667, 2.667, 1.333}, {0.667, 0.667, 2.667, 2.667}}}},
      {"case1-qo", Model::Qo, case1,
       {{1, 0.293, 0.5, {0.707, 1.414, 1.414, 2.828}, {0.707, 0.707, 2.828, 2.828}},
        {2, 0.293, 0.5, {0.707, 1.414, 2.828, 1.414}, {0.707, 0.707, 2.828, 2.828}},
        {3, 0.293, 0.5, {1.414, 0.707, 1.414, 2.828}, {0.707, 0.707, 2.828, 2.828}},
        {4, 0.293, 0.5, {1.414, 0.707, 2.828, 1.414}, {0.707, 0.707, 2.828, 2.828}}}},
      {"case2-lo", Model::Lo, case2,
       {{1, 0.4, 0.5, {0.6, 1.2, 1.2, 2.4}, {0.6, 0.6, 2.4, 2.4}},
        {2, 0.4, 0.5, {0.6, 1.2, 2.4, 1.2}, {0.6, 0.6, 2.4, 2.4}},
        {3, 0.4, 0.5, {1.2, 0.6, 1.2, 2.4}, {0.6, 0.6, 2.4, 2.4}},
        {4, 0.4, 0.5, {1.2, 0.6, 2.4, 1.2}, {0.6, 0.6, 2.4, 2.4}}}},
      {"case2-qo", Model::Qo, case2,
       {{1, 0.382, 0.5, {0.618, 1.236, 1.236, 2.472}, {0.618, 0.618, 2.472, 2.472}},
        {2, 0.382, 0.5, {0.618, 1.236, 2.472, 1.236}, {0.618, 0.618, 2.472, 2.472}},
        {3, 0.382, 0.5, {1.236, 0.618, 1.236, 2.472}, {0.618, 0.618, 2.472, 2.472}},
        {4, 0.382, 0.5, {1.236, 0.618, 2.472, 1.236}, {0.618, 0.618, 2.472, 2.472}}}},
      {"case3-lo", Model::Lo, case3,
       {{1, 0.4, 0.538, {0.6, 1.6, 1.4, 2.4}, {0.6, 0.6, 2.4, 2.4}},
        {2, 0.333, 0.6, {0.667, 1.667, 2.667, 1.167}, {0.667, 0.667, 2.667, 2.667}},
        {3, 0.667, 0.333, {0.667, 0.667, 1.667, 2.667}, {0.667, 0.667, 2.667, 2.667}},
        {4, 0.5, 0.455, {1, 0.75, 3, 1.25}, {0.75, 0.75, 3, 3}}}},
      {"case3-qo", Model::Qo, case3,
       {{1, 0.382, 0.5, {0.618, 1.618, 1.618, 2.472}, {0.618, 0.618, 2.472, 2.472}},
        {2, 0.293, 0.604, {0.707, 1.707, 2.828, 1.172}, {0.707, 0.707, 2.828, 2.828}},
        {3, 0.586, 0.293, {0.828, 0.707, 2.414, 2.828}, {0.707, 0.707, 2.828, 2.828}},
        {4, 0.382, 0.5, {1.236, 0.809, 3.236, 1.236}, {0.809, 0.809, 3.236, 3.236}}}},
  };
}

struct FactorRow {
  Model model;
  Orientation d;
  std::array<double, 2> theta;
  std::array<double, 2> phi;
  std::array<double, 2> tau_minus;
  std::array<double, 2> tau_plus;
};

// Contractions, dilations and relative slacks of DMU B.
inline std::vector<FactorRow> factor_rows() {
  const Orientation case1 = fixtures::orient({1, 1}, {1, 1});
  const Orientation case2 = fixtures::orient({1, 1}, {0.5, 0.5});
  const Orientation case3 = fixtures::orient({1, 0.5}, {1, 0.5});
  return {
      {Model::Lo, case1, {0.667, 0.667}, {1.333, 1.333}, {0.333, 0.333}, {0.333, 0.333}},
      {Model::Qo, case1, {0.707, 0.707}, {1.414, 1.414}, {0.293, 0.293}, {0.414, 0.414}},
      {Model::Lo, case2, {0.6, 0.6}, {1.2, 1.2}, {0.4, 0.4}, {0.2, 0.2}},
      {Model::Qo, case2, {0.618, 0.618}, {1.236, 1.236}, {0.382, 0.382}, {0.236, 0.236}},
      {Model::Lo, case3, {0.6, 0.8}, {1.4, 1.2}, {0.4, 0.2}, {0.4, 0.2}},
      {Model::Qo, case3, {0.618, 0.809}, {1.618, 1.236}, {0.382, 0.191}, {0.618, 0.236}},
  };
}

// Largest absolute gap between an evaluation and a reference row.
inline double row_gap(const Evaluation& e, const Row& row) {
  double gap = std::max(std::abs(e.beta - row.beta), std::abs(e.rho - row.rho));
  const std::array<double, 4> t{e.target.x[0], e.target.x[1], e.target.y[0], e.target.y[1]};
  const std::array<double, 4> p{e.projection.x[0], e.projection.x[1], e.projection.y[0], e.projection.y[1]};
  for (int k = 0; k < 4; ++k) {
    gap = std::max(gap, std::abs(t[k] - row.target[k]));
    gap = std::max(gap, std::abs(p[k] - row.projection[k]));
  }
  return gap;
}

inline double factor_gap(const Evaluation& e, const FactorRow& row) {
  double gap = 0.0;
  for (int k = 0; k < 2; ++k) {
    gap = std::max(gap, std::abs(e.theta[k] - row.theta[k]));
    gap = std::max(gap, std::abs(e.phi[k] - row.phi[k]));
    gap = std::max(gap, std::abs(e.tau_minus[k] - row.tau_minus[k]));
    gap = std::max(gap, std::abs(e.tau_plus[k] - row.tau_plus[k]));
  }
  return gap;
}

}  // namespace expected
