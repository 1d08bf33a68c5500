#include "deaorient/report.hpp"
#include "expected.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>

using namespace deaorient;

namespace {

const char* kFiveDmu =
    "dmu,i:x1,i:x2,o:y1,o:y2\n"
    "A,1,1,4,4\n"
    "B,1,2,1,2\n"
    "C,1,2,2,1\n"
    "D,2,1,1,2\n"
    "E,2,1,2,1\n";

Dataset five_dmu() {
  std::istringstream in(kFiveDmu);
  return read_csv(in);
}

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("reading CSV") {
  const auto data = five_dmu();
  CHECK(data.tech.num_dmus() == 5);
  CHECK(data.input_names == std::vector<std::string>{"x1", "x2"});
  CHECK(data.output_names == std::vector<std::string>{"y1", "y2"});
  CHECK(data.tech.names[4] == "E");
  CHECK(data.tech.outputs(0, 0) == 4.0);

  // Column order of inputs and outputs may interleave.
  const auto mixed = parse("dmu,o:y,i:x\nA,3,1\nB,1,2\n");
  CHECK(mixed.tech.inputs(0, 1) == 2.0);
  CHECK(mixed.tech.outputs(0, 0) == 3.0);

  const auto file = read_csv_file(std::string(std::getenv("DEAORIENT_DATA_DIR")) + "/five_dmu.csv");
  CHECK(file.tech.inputs == data.tech.inputs);

  CHECK_THROWS_AS(parse(""), DataError);
  CHECK_THROWS_AS(parse("dmu,x1,o:y\nA,1,1\n"), DataError);
  CHECK_THROWS_AS(parse("dmu,i:x,o:y\nA,1\n"), DataError);
  CHECK_THROWS_AS(parse("dmu,i:x,o:y\nA,1,abc\n"), DataError);
  CHECK_THROWS_AS(parse("dmu,i:x,o:y\n"), DataError);
  CHECK_THROWS_AS(read_csv_file("/nonexistent/file.csv"), DataError);
  CHECK_THROWS_WITH_AS(parse("dmu,i:x,o:y\nA,1,1\nB,1,x\n"), doctest::Contains("line 3"), DataError);
}

TEST_CASE("orientation and gradient syntax") {
  const auto d = parse_orientation("1,0.5:0,2", 2, 2);
  CHECK(d.d_minus[1] == 0.5);
  CHECK(d.d_plus[1] == 2.0);
  CHECK_THROWS_AS(parse_orientation("1,1", 2, 2), DataError);
  CHECK_THROWS_AS(parse_orientation("1:1,1", 2, 2), DataError);
  CHECK_THROWS_AS(parse_orientation("1,x:1,1", 2, 2), DataError);

  const auto cg = parse_cost_gradient("2,-:4,1", 2, 2);
  CHECK(cg.controllable == std::vector<bool>{true, false, true, true});
  CHECK(cg.grad[2] == 4.0);
  CHECK(cg.num_inputs == 2);

  CHECK(parse_models("both") == std::vector<Model>{Model::Lo, Model::Qo});
  CHECK(parse_models("qo") == std::vector<Model>{Model::Qo});
  CHECK_THROWS_AS(parse_models("ql"), DataError);
}

TEST_CASE("configuration") {
  const auto j = nlohmann::json::parse(R"({
    "model": "both", "orient": "1,1:0.5,0.5", "rts": "grs:0.5:2", "second_stage": false,
    "zero_output_policy": {"default": "impossible", "y2": "potential"},
    "tolerances": {"bisection": 1e-10, "agreement": 1e-8}, "round": 3, "threads": 2
  })");
  const auto c = apply_config_json(j);
  CHECK(c.models.size() == 2);
  CHECK(c.orient == "1,1:0.5,0.5");
  CHECK(c.rts.kind == RtsKind::Grs);
  CHECK_FALSE(c.second_stage);
  CHECK(c.zero_output_policy == ZeroOutputPolicy::Impossible);
  CHECK(c.zero_output_overrides.at("y2") == ZeroOutputPolicy::Potential);
  CHECK(c.bisection_tol == 1e-10);
  CHECK(c.eval_options().agreement_tol == 1e-8);
  CHECK(c.round == 3);

  CHECK_THROWS_AS(apply_config_json(nlohmann::json::parse(R"({"modle": "lo"})")), DataError);
  CHECK_THROWS_AS(apply_config_json(nlohmann::json::parse(R"({"round": "three"})")), DataError);
  CHECK_THROWS_AS(apply_config_json(nlohmann::json::parse(R"({"rts": "xrs"})")), DataError);
}

TEST_CASE("thread count") {
  CHECK(resolve_threads(3) == 3u);
  CHECK(resolve_threads(0) >= 1u);
  setenv("DEAORIENT_THREADS", "1", 1);
  CHECK(resolve_threads(8) == 1u);
  CHECK(resolve_threads(0) == 1u);
  unsetenv("DEAORIENT_THREADS");
}

TEST_CASE("batch run reproduces the reference rows") {
  const auto data = five_dmu();
  for (const auto& table : expected::tables()) {
    RunConfig config;
    config.models = {table.model};
    std::ostringstream spec;
    spec << table.d.d_minus[0] << ',' << table.d.d_minus[1] << ':' << table.d.d_plus[0] << ','
         << table.d.d_plus[1];
    config.orient = spec.str();
    const auto report = run_batch(data, config);
    REQUIRE(report.runs.size() == 1);
    CHECK_FALSE(report.has_data_failure());
    CHECK_FALSE(report.has_solver_failure());
    for (const auto& row : table.rows) {
      CAPTURE(table.name);
      const auto& result = report.runs[0].results[static_cast<std::size_t>(row.dmu)];
      REQUIRE(result.eval.has_value());
      CHECK(expected::row_gap(*result.eval, row) <= 1e-3);
    }
  }
}

TEST_CASE("batch errors") {
  RunConfig config;
  config.orient = "0,0:0,0";
  CHECK_THROWS_WITH_AS(run_batch(five_dmu(), config), doctest::Contains("orientation must be nonzero"), DataError);
  CHECK_THROWS_WITH_AS(run_batch(parse("dmu,i:x,o:y\nA,-1,1\nB,1,1\n"), RunConfig{}), doctest::Contains("negative"),
                       DataError);
  config.orient = "1,1";
  CHECK_THROWS_AS(run_batch(five_dmu(), config), DataError);
}

TEST_CASE("cost gradient run") {
  RunConfig config;
  config.cost_gradient = "1,1:1,1";
  const auto report = run_batch(five_dmu(), config);
  CHECK(report.from_cost_gradient);
  CHECK(report.orientation.d_minus[0] == doctest::Approx(0.25));
  CHECK(report.runs[0].results[1].eval->rho == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("zero outputs by policy") {
  const std::string text = "dmu,i:x,o:y1,o:y2\nA,1,2,0\nB,1,1,1\nC,2,1,1\n";
  RunConfig config;
  config.zero_output_policy = ZeroOutputPolicy::Impossible;
  auto report = run_batch(parse(text), config);
  REQUIRE(report.zero_log.entries.size() == 1);
  CHECK(report.zero_log.entries[0].kind == ZeroAdjustment::Kind::OutputExcluded);
  const auto& a = *report.runs[0].results[0].eval;
  CHECK(a.phi[1] == 1.0);

  config.zero_output_policy = ZeroOutputPolicy::Potential;
  report = run_batch(parse(text), config);
  CHECK(report.zero_log.entries[0].kind == ZeroAdjustment::Kind::OutputReplaced);
  CHECK(report.data.tech.outputs(1, 0) == doctest::Approx(0.1));

  config.zero_output_overrides["y2"] = ZeroOutputPolicy::Impossible;
  report = run_batch(parse(text), config);
  CHECK(report.zero_log.entries[0].kind == ZeroAdjustment::Kind::OutputExcluded);
}

TEST_CASE("formatting") {
  CHECK(format_fixed(-0.0, 3) == "0.000");
  CHECK(format_fixed(-1e-12, 6) == "0.000000");
  CHECK(format_fixed(1.0 / 3.0, 3) == "0.333");
  CHECK(format_fixed(-0.5, 1) == "-0.5");
}

TEST_CASE("JSON output round-trips bit-exactly") {
  RunConfig config;
  config.models = {Model::Lo, Model::Qo};
  config.orient = "1,0.5:1,0.5";
  const auto report = run_batch(five_dmu(), config);
  const auto j = to_json(report);
  const auto back = nlohmann::json::parse(j.dump());
  CHECK(back == j);
  const auto& runs = back.at("runs");
  REQUIRE(runs.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < 5; ++i) {
      const auto& e = *report.runs[k].results[i].eval;
      const auto& r = runs[k].at("results")[i];
      CHECK(r.at("beta").get<double>() == e.beta);
      CHECK(r.at("rho").get<double>() == e.rho);
      CHECK(r.at("target").at("y")[1].get<double>() == e.target.y[1]);
      CHECK(r.at("lambda")[0].get<double>() == e.lambda[0]);
    }
  }
}

TEST_CASE("CSV output round-trips at the requested precision") {
  RunConfig config;
  config.models = {Model::Qo};
  const auto report = run_batch(five_dmu(), config);
  std::ostringstream out;
  write_csv(out, report, 9);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  const auto header = split(line);
  CHECK(header.front() == "model");
  CHECK(header.back() == "error");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto cells = split(line);
    REQUIRE(cells.size() == header.size());
    const auto& e = *report.runs[0].results[static_cast<std::size_t>(rows)].eval;
    CHECK(cells[0] == "qo");
    CHECK(cells[2] == "ok");
    CHECK(std::stod(cells[4]) == doctest::Approx(e.beta).epsilon(1e-9));
    CHECK(std::stod(cells[5]) == doctest::Approx(e.rho).epsilon(1e-9));
    ++rows;
  }
  CHECK(rows == 5);

  std::ostringstream table;
  write_table(table, report, 3);
  CHECK(table.str().find("0.293") != std::string::npos);
}

TEST_CASE("results do not depend on the thread count") {
  fixtures::Random rnd(103);
  Dataset data;
  data.tech = rnd.technology(40, 3, ReturnsToScale::vrs());
  for (Index i = 0; i < data.tech.num_inputs(); ++i) data.input_names.push_back("x" + std::to_string(i));
  for (Index r = 0; r < data.tech.num_outputs(); ++r) data.output_names.push_back("y" + std::to_string(r));
  RunConfig config;
  config.models = {Model::Lo, Model::Qo};
  config.threads = 1;
  const auto one = to_json(run_batch(data, config)).dump();
  config.threads = 4;
  const auto four = to_json(run_batch(data, config)).dump();
  CHECK(one == four);
}

TEST_CASE("factor bars") {
  const auto data = five_dmu();
  for (const auto& ref : expected::factor_rows()) {
    RunConfig config;
    config.models = {ref.model};
    std::ostringstream spec;
    spec << ref.d.d_minus[0] << ',' << ref.d.d_minus[1] << ':' << ref.d.d_plus[0] << ',' << ref.d.d_plus[1];
    config.orient = spec.str();
    const auto report = run_batch(data, config);
    const auto& eval = *report.runs[0].results[1].eval;
    const auto bars = emit_bars(eval, data.input_names, data.output_names);
    REQUIRE(bars.size() == 4);
    CHECK(bars[0].kind == "contraction");
    CHECK(bars[3].kind == "dilation");
    CHECK(bars[3].variable == "y2");
    for (int k = 0; k < 2; ++k) {
      CHECK(std::abs(bars[k].factor - ref.theta[k]) <= 1e-3);
      CHECK(std::abs(bars[k].relative_slack - ref.tau_minus[k]) <= 1e-3);
      CHECK(std::abs(bars[2 + k].factor - ref.phi[k]) <= 1e-3);
      CHECK(std::abs(bars[2 + k].relative_slack - ref.tau_plus[k]) <= 1e-3);
      CHECK(bars[2 + k].inverse_factor == doctest::Approx(1.0 / bars[2 + k].factor));
    }
  }
  std::ostringstream out;
  write_bars_csv(out, "lo", "B", {BarRow{"x1", "contraction", 1.0, 0.5, 2.0, 0.5}}, 3, true);
  CHECK(out.str() == "model,dmu,variable,kind,orientation,factor,inverse_factor,relative_slack\n"
                     "lo,B,x1,contraction,1.000,0.500,2.000,0.500\n");
}

TEST_CASE("self-check") {
  const auto data = five_dmu();
  RunConfig config;
  config.models = {Model::Lo, Model::Qo};
  const auto results = self_check(data, config);
  CHECK(results.size() >= 8);
  for (const auto& r : results) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.passed);
  }

  SelfCheckOptions corrupt;
  corrupt.corrupt_comparator = true;
  bool caught = false;
  for (const auto& r : self_check(data, config, corrupt)) caught = caught || !r.passed;
  CHECK(caught);
}
