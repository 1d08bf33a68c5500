#include "deaorient/report.hpp"

#include "deaorient/lo.hpp"
#include "deaorient/qo.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace deaorient {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_number(const std::string& token) {
  if (token.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) return std::nullopt;
  return v;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

Vector parse_list(const std::string& part, Index expected, const char* what) {
  const auto tokens = split(part, ',');
  if (static_cast<Index>(tokens.size()) != expected) {
    throw DataError(std::string(what) + ": expected " + std::to_string(expected) + " values, got " +
                    std::to_string(tokens.size()));
  }
  Vector v(expected);
  for (Index k = 0; k < expected; ++k) {
    const auto x = to_number(tokens[k]);
    if (!x) throw DataError(std::string(what) + ": not a number: '" + tokens[k] + "'");
    v[k] = *x;
  }
  return v;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> as_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* status_of(const DmuResult& r) {
  switch (r.failure) {
    case DmuResult::Failure::None: return "ok";
    case DmuResult::Failure::Data: return "data-error";
    case DmuResult::Failure::Solver: return "solver-error";
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Input

Dataset read_csv(std::istream& in) {
  Dataset data;
  std::vector<int> column_kind;  // 0 input, 1 output
  std::vector<std::vector<double>> xs;
  std::vector<std::vector<double>> ys;
  std::vector<std::string> names;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!have_header) {
      if (lower(cells[0]) != "dmu") throw DataError(where + "header must start with 'dmu'");
      std::set<std::string> seen;
      for (std::size_t c = 1; c < cells.size(); ++c) {
        const std::string& h = cells[c];
        if (h.size() < 3 || (h.rfind("i:", 0) != 0 && h.rfind("o:", 0) != 0)) {
          throw DataError(where + "column '" + h + "' needs an 'i:' or 'o:' prefix and a name");
        }
        if (!seen.insert(h).second) throw DataError(where + "duplicate column '" + h + "'");
        const bool input = h[0] == 'i';
        column_kind.push_back(input ? 0 : 1);
        (input ? data.input_names : data.output_names).push_back(h.substr(2));
      }
      have_header = true;
      continue;
    }
    if (cells.size() != column_kind.size() + 1) {
      throw DataError(where + "expected " + std::to_string(column_kind.size() + 1) + " fields, got " +
                      std::to_string(cells.size()));
    }
    if (cells[0].empty()) throw DataError(where + "empty DMU name");
    names.push_back(cells[0]);
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const auto v = to_number(cells[c]);
      if (!v) throw DataError(where + "not a number: '" + cells[c] + "'");
      (column_kind[c - 1] == 0 ? x : y).push_back(*v);
    }
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
  }
  if (!have_header) throw DataError("empty data file");
  if (names.empty()) throw DataError("data file has no DMU rows");

  const Index n = static_cast<Index>(names.size());
  Matrix X(static_cast<Index>(data.input_names.size()), n);
  Matrix Y(static_cast<Index>(data.output_names.size()), n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < X.rows(); ++i) X(i, j) = xs[j][i];
    for (Index r = 0; r < Y.rows(); ++r) Y(r, j) = ys[j][r];
  }
  data.tech = Technology(std::move(X), std::move(Y), ReturnsToScale::crs(), std::move(names));
  return data;
}

Dataset read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file '" + path + "'");
  return read_csv(in);
}

Orientation parse_orientation(std::string_view text, Index m, Index s) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  if (colon == std::string::npos || t.find(':', colon + 1) != std::string::npos) {
    throw DataError("orientation must look like 'd1,...,dm:d1,...,ds', got '" + t + "'");
  }
  return {parse_list(t.substr(0, colon), m, "input orientation"),
          parse_list(t.substr(colon + 1), s, "output orientation")};
}

CostGradient parse_cost_gradient(std::string_view text, Index m, Index s) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  if (colon == std::string::npos) throw DataError("cost gradient must look like 'g1,...,gm:g1,...,gs'");
  CostGradient cg;
  cg.num_inputs = m;
  cg.grad = Vector::Zero(m + s);
  auto fill = [&](const std::string& part, Index count, Index offset) {
    const auto tokens = split(part, ',');
    if (static_cast<Index>(tokens.size()) != count) {
      throw DataError("cost gradient: expected " + std::to_string(count) + " values, got " +
                      std::to_string(tokens.size()));
    }
    for (Index k = 0; k < count; ++k) {
      if (tokens[k] == "-") {
        cg.controllable.push_back(false);
        continue;
      }
      const auto v = to_number(tokens[k]);
      if (!v) throw DataError("cost gradient: not a number: '" + tokens[k] + "'");
      cg.grad[offset + k] = *v;
      cg.controllable.push_back(true);
    }
  };
  fill(t.substr(0, colon), m, 0);
  fill(t.substr(colon + 1), s, m);
  return cg;
}

// ---------------------------------------------------------------------------
// Configuration

EvalOptions RunConfig::eval_options() const {
  EvalOptions o;
  o.second_stage = second_stage;
  o.qo_force_bisection = qo_force_bisection;
  o.qo_cross_check = qo_cross_check;
  o.bisection_tol = bisection_tol;
  o.agreement_tol = agreement_tol;
  return o;
}

namespace {

bool json_switch(const nlohmann::json& v, const char* key) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const std::string s = lower(v.get<std::string>());
    if (s == "on" || s == "true") return true;
    if (s == "off" || s == "false") return false;
  }
  throw DataError(std::string("config key '") + key + "' must be on/off or a boolean");
}

ZeroOutputPolicy policy_or_throw(const std::string& text) {
  const auto p = parse_zero_output_policy(text);
  if (!p) throw DataError("unknown zero output policy '" + text + "'");
  return *p;
}

}  // namespace

std::vector<Model> parse_models(const std::string& text) {
  const std::string t = lower(text);
  if (t == "lo") return {Model::Lo};
  if (t == "qo") return {Model::Qo};
  if (t == "both") return {Model::Lo, Model::Qo};
  throw DataError("model must be lo, qo or both, got '" + text + "'");
}

RunConfig apply_config_json(const nlohmann::json& j, RunConfig cfg) {
  if (!j.is_object()) throw DataError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "model") {
        cfg.models = parse_models(v.get<std::string>());
      } else if (key == "orient") {
        cfg.orient = v.get<std::string>();
      } else if (key == "cost_gradient") {
        cfg.cost_gradient = v.get<std::string>();
      } else if (key == "cost_normalization") {
        const std::string s = lower(v.get<std::string>());
        if (s == "count") {
          cfg.cost_normalization = GradientNormalization::Count;
        } else if (s == "inf_norm") {
          cfg.cost_normalization = GradientNormalization::InfNorm;
        } else {
          throw DataError("cost_normalization must be count or inf_norm");
        }
      } else if (key == "rts") {
        cfg.rts = ReturnsToScale::parse(v.get<std::string>());
      } else if (key == "second_stage") {
        cfg.second_stage = json_switch(v, "second_stage");
      } else if (key == "zero_output_policy") {
        if (v.is_string()) {
          cfg.zero_output_policy = policy_or_throw(v.get<std::string>());
        } else if (v.is_object()) {
          for (const auto& [name, p] : v.items()) {
            if (name == "default") {
              cfg.zero_output_policy = policy_or_throw(p.get<std::string>());
            } else {
              cfg.zero_output_overrides[name] = policy_or_throw(p.get<std::string>());
            }
          }
        } else {
          throw DataError("zero_output_policy must be a string or an object");
        }
      } else if (key == "zero_replacement_factor") {
        cfg.zero_replacement_factor = v.get<double>();
      } else if (key == "qo_force_bisection") {
        cfg.qo_force_bisection = json_switch(v, "qo_force_bisection");
      } else if (key == "qo_cross_check") {
        cfg.qo_cross_check = json_switch(v, "qo_cross_check");
      } else if (key == "tolerances") {
        for (const auto& [name, t] : v.items()) {
          if (name == "bisection") {
            cfg.bisection_tol = t.get<double>();
          } else if (name == "agreement") {
            cfg.agreement_tol = t.get<double>();
          } else {
            throw DataError("unknown tolerance '" + name + "'");
          }
        }
      } else if (key == "round") {
        cfg.round = v.get<int>();
      } else if (key == "threads") {
        cfg.threads = v.get<int>();
      } else {
        throw DataError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config '" + path + "': " + e.what());
  }
  return apply_config_json(j, std::move(base));
}

unsigned resolve_threads(int requested) {
  unsigned n = requested > 0 ? static_cast<unsigned>(requested) : std::thread::hardware_concurrency();
  if (const char* env = std::getenv("DEAORIENT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

// ---------------------------------------------------------------------------
// Batch

bool Report::has_data_failure() const {
  for (const auto& run : runs) {
    for (const auto& r : run.results) {
      if (r.failure == DmuResult::Failure::Data) return true;
    }
  }
  return false;
}

bool Report::has_solver_failure() const {
  for (const auto& run : runs) {
    for (const auto& r : run.results) {
      if (r.failure == DmuResult::Failure::Solver) return true;
    }
  }
  return false;
}

namespace {

Orientation resolve_orientation(const RunConfig& cfg, Index m, Index s, double& multiplier, bool& from_cost) {
  multiplier = 1.0;
  from_cost = false;
  if (!cfg.cost_gradient.empty()) {
    if (!cfg.orient.empty()) throw DataError("give either an orientation or a cost gradient, not both");
    const CostOrientation co =
        orientation_from_cost_gradient(parse_cost_gradient(cfg.cost_gradient, m, s), cfg.cost_normalization);
    multiplier = co.beta_cost_multiplier;
    from_cost = true;
    return co.orientation;
  }
  if (cfg.orient.empty()) return Orientation::uniform(m, s, 1.0, 1.0);
  std::error_code ec;
  if (std::filesystem::is_regular_file(cfg.orient, ec)) return parse_orientation(read_text(cfg.orient), m, s);
  return parse_orientation(cfg.orient, m, s);
}

}  // namespace

Report run_batch(const Dataset& data, const RunConfig& config) {
  const auto diags = validate_technology(data.tech);
  if (!diags.empty()) {
    std::string msg;
    for (const auto& d : diags) msg += (msg.empty() ? "" : "\n") + d.message;
    throw DataError(msg);
  }
  const Index m = data.tech.num_inputs();
  const Index s = data.tech.num_outputs();

  ZeroPolicy zp;
  zp.default_policy = config.zero_output_policy;
  zp.replacement_factor = config.zero_replacement_factor;
  zp.per_output.assign(s, std::nullopt);
  for (const auto& [name, policy] : config.zero_output_overrides) {
    const auto it = std::find(data.output_names.begin(), data.output_names.end(), name);
    if (it == data.output_names.end()) throw DataError("zero output policy names unknown output '" + name + "'");
    zp.per_output[it - data.output_names.begin()] = policy;
  }

  Report report;
  report.config = config;
  auto [tech, log] = preprocess_zeros(data.tech.with_rts(config.rts), zp);
  report.data = {std::move(tech), data.input_names, data.output_names};
  report.zero_log = std::move(log);
  report.orientation = resolve_orientation(config, m, s, report.beta_cost_multiplier, report.from_cost_gradient);
  validate_orientation(report.orientation, {Vector::Ones(m), Vector::Ones(s)});

  const Technology& t = report.data.tech;
  const Index n = t.num_dmus();
  const EvalOptions opts = config.eval_options();
  for (Model model : config.models) {
    ModelRun run{model, std::vector<DmuResult>(n)};
    for (Index j = 0; j < n; ++j) run.results[j].name = t.names[j];
    report.runs.push_back(std::move(run));
  }

  const std::size_t total = report.runs.size() * static_cast<std::size_t>(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      ModelRun& run = report.runs[k / n];
      const Index j = static_cast<Index>(k % n);
      DmuResult& out = run.results[j];
      try {
        out.eval = run.model == Model::Lo ? solve_lo(t, t.activity(j), report.orientation, opts)
                                          : solve_qo(t, t.activity(j), report.orientation, opts);
      } catch (const DataError& e) {
        out.failure = DmuResult::Failure::Data;
        out.error = e.what();
      } catch (const std::exception& e) {
        out.failure = DmuResult::Failure::Solver;
        out.error = e.what();
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(resolve_threads(config.threads), std::max<std::size_t>(total, 1));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return report;
}

// ---------------------------------------------------------------------------
// Output

std::string format_fixed(double v, int digits) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  int len = std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string out;
  if (len < 0 || len >= static_cast<int>(sizeof buf)) {
    out.resize(std::snprintf(nullptr, 0, "%.*f", digits, v) + 1);
    std::snprintf(out.data(), out.size(), "%.*f", digits, v);
    out.pop_back();
  } else {
    out.assign(buf, len);
  }
  if (out[0] == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

nlohmann::json to_json(const Report& report) {
  using nlohmann::json;
  const RunConfig& c = report.config;
  json j;
  json models = json::array();
  for (Model m : c.models) models.push_back(to_string(m));
  j["config"] = {{"models", models},
                 {"rts", c.rts.to_string()},
                 {"second_stage", c.second_stage},
                 {"zero_output_policy", to_string(c.zero_output_policy)},
                 {"qo_force_bisection", c.qo_force_bisection},
                 {"bisection_tol", c.bisection_tol}};
  const Orientation normalized = report.orientation.normalized();
  j["orientation"] = {{"d_minus", as_std(report.orientation.d_minus)},
                      {"d_plus", as_std(report.orientation.d_plus)},
                      {"normalized_d_minus", as_std(normalized.d_minus)},
                      {"normalized_d_plus", as_std(normalized.d_plus)}};
  if (report.from_cost_gradient) j["beta_cost_multiplier"] = report.beta_cost_multiplier;
  j["inputs"] = report.data.input_names;
  j["outputs"] = report.data.output_names;
  j["dmus"] = report.data.tech.names;

  json zeros = json::array();
  for (const auto& e : report.zero_log.entries) {
    zeros.push_back({{"kind", to_string(e.kind)},
                     {"dmu", report.data.tech.names[e.dmu]},
                     {"variable", e.variable},
                     {"original", e.original},
                     {"replacement", e.replacement}});
  }
  j["zero_adjustments"] = zeros;

  json runs = json::array();
  for (const auto& run : report.runs) {
    json results = json::array();
    for (const auto& r : run.results) {
      json row = {{"dmu", r.name}, {"status", status_of(r)}};
      if (!r.eval) {
        row["error"] = r.error;
        results.push_back(row);
        continue;
      }
      const Evaluation& e = *r.eval;
      row["method"] = e.method;
      row["beta"] = e.beta;
      row["rho"] = e.rho;
      row["theta"] = as_std(e.theta);
      row["phi"] = as_std(e.phi);
      row["tau_minus"] = as_std(e.tau_minus);
      row["tau_plus"] = as_std(e.tau_plus);
      row["target"] = {{"x", as_std(e.target.x)}, {"y", as_std(e.target.y)}};
      row["projection"] = {{"x", as_std(e.projection.x)}, {"y", as_std(e.projection.y)}};
      row["lambda"] = as_std(e.lambda);
      row["s_minus"] = as_std(e.s_minus);
      row["s_plus"] = as_std(e.s_plus);
      row["outside_technology"] = e.outside_technology;
      row["second_stage_applied"] = e.second_stage_applied;
      row["projection_may_vary"] = e.projection_may_vary;
      row["beta_gradient"] = as_std(e.beta_gradient);
      row["lp_solves"] = e.lp_solves;
      if (report.from_cost_gradient) row["cost_approximation"] = e.beta * report.beta_cost_multiplier;
      results.push_back(row);
    }
    runs.push_back({{"model", to_string(run.model)}, {"results", results}});
  }
  j["runs"] = runs;
  return j;
}

void write_csv(std::ostream& out, const Report& report, int digits) {
  const auto& in = report.data.input_names;
  const auto& on = report.data.output_names;
  out << "model,dmu,status,method,beta,rho";
  for (const char* p : {"theta", "tau_minus"}) {
    for (const auto& nm : in) out << ',' << p << ':' << nm;
  }
  for (const char* p : {"phi", "tau_plus"}) {
    for (const auto& nm : on) out << ',' << p << ':' << nm;
  }
  for (const char* p : {"target", "projection"}) {
    for (const auto& nm : in) out << ',' << p << ":i:" << nm;
    for (const auto& nm : on) out << ',' << p << ":o:" << nm;
  }
  for (const auto& nm : in) out << ",s_minus:" << nm;
  for (const auto& nm : on) out << ",s_plus:" << nm;
  for (const auto& nm : report.data.tech.names) out << ",lambda:" << nm;
  out << ",outside_technology,projection_may_vary,error\n";

  const std::size_t numeric = 2 + 2 * in.size() + 2 * on.size() + 2 * (in.size() + on.size()) + in.size() +
                              on.size() + report.data.tech.names.size();
  auto vec = [&](const Vector& v) {
    for (Index k = 0; k < v.size(); ++k) out << ',' << format_fixed(v[k], digits);
  };
  for (const auto& run : report.runs) {
    for (const auto& r : run.results) {
      out << to_string(run.model) << ',' << csv_escape(r.name) << ',' << status_of(r) << ',';
      if (!r.eval) {
        for (std::size_t k = 0; k < numeric; ++k) out << ',';
        out << ",,," << csv_escape(r.error) << '\n';
        continue;
      }
      const Evaluation& e = *r.eval;
      out << e.method << ',' << format_fixed(e.beta, digits) << ',' << format_fixed(e.rho, digits);
      vec(e.theta);
      vec(e.tau_minus);
      vec(e.phi);
      vec(e.tau_plus);
      vec(e.target.x);
      vec(e.target.y);
      vec(e.projection.x);
      vec(e.projection.y);
      vec(e.s_minus);
      vec(e.s_plus);
      vec(e.lambda);
      out << ',' << (e.outside_technology ? "true" : "false") << ',' << (e.projection_may_vary ? "true" : "false")
          << ",\n";
    }
  }
}

void write_table(std::ostream& out, const Report& report, int digits) {
  const int width = digits + 4;
  auto cell = [&](double v) {
    std::string s = format_fixed(v, digits);
    if (static_cast<int>(s.size()) < width) s.insert(0, width - s.size(), ' ');
    return s;
  };
  auto tuple = [&](const Activity& a) {
    std::string s = "(";
    for (Index i = 0; i < a.x.size(); ++i) s += (i ? "," : "") + format_fixed(a.x[i], digits);
    s += ";";
    for (Index r = 0; r < a.y.size(); ++r) s += (r ? "," : "") + format_fixed(a.y[r], digits);
    return s + ")";
  };
  std::size_t name_width = 4;
  for (const auto& nm : report.data.tech.names) name_width = std::max(name_width, nm.size());

  for (const auto& run : report.runs) {
    out << (run.model == Model::Lo ? "LO" : "QO") << " model, " << report.config.rts.to_string() << "\n";
    out << std::left << std::setw(static_cast<int>(name_width)) << "DMU" << std::right << std::setw(width + 1)
        << "beta" << std::setw(width + 1) << "rho"
        << "  target  projection\n";
    for (const auto& r : run.results) {
      out << std::left << std::setw(static_cast<int>(name_width)) << r.name << std::right;
      if (!r.eval) {
        out << "  " << status_of(r) << ": " << r.error << "\n";
        continue;
      }
      const Evaluation& e = *r.eval;
      out << ' ' << cell(e.beta) << ' ' << cell(e.rho) << "  " << tuple(e.target) << "  " << tuple(e.projection);
      if (e.outside_technology) out << "  [outside]";
      out << "\n";
    }
    out << "\n";
  }
}

std::vector<BarRow> emit_bars(const Evaluation& eval, const std::vector<std::string>& input_names,
                              const std::vector<std::string>& output_names) {
  std::vector<BarRow> rows;
  for (Index i = 0; i < eval.theta.size(); ++i) {
    const std::string name = i < static_cast<Index>(input_names.size()) ? input_names[i] : "x" + std::to_string(i + 1);
    rows.push_back({name, "contraction", eval.orientation.d_minus[i], eval.theta[i], 1.0 / eval.theta[i],
                    eval.tau_minus[i]});
  }
  for (Index r = 0; r < eval.phi.size(); ++r) {
    const std::string name =
        r < static_cast<Index>(output_names.size()) ? output_names[r] : "y" + std::to_string(r + 1);
    rows.push_back({name, "dilation", eval.orientation.d_plus[r], eval.phi[r], 1.0 / eval.phi[r], eval.tau_plus[r]});
  }
  return rows;
}

void write_bars_csv(std::ostream& out, const std::string& model, const std::string& dmu,
                    const std::vector<BarRow>& rows, int digits, bool header) {
  if (header) out << "model,dmu,variable,kind,orientation,factor,inverse_factor,relative_slack\n";
  for (const auto& b : rows) {
    out << model << ',' << csv_escape(dmu) << ',' << csv_escape(b.variable) << ',' << b.kind << ','
        << format_fixed(b.orientation, digits) << ',' << format_fixed(b.factor, digits) << ','
        << format_fixed(b.inverse_factor, digits) << ',' << format_fixed(b.relative_slack, digits) << '\n';
  }
}

}  // namespace deaorient
