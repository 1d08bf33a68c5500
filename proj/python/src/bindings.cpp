#include "deaorient/lo.hpp"
#include "deaorient/oracle.hpp"
#include "deaorient/projection.hpp"
#include "deaorient/qo.hpp"
#include "deaorient/report.hpp"
#include "deaorient/scores.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace deaorient;

namespace {

Orientation make_orientation(const Vector& d_minus, const Vector& d_plus) { return {d_minus, d_plus}; }

EvalOptions make_options(bool second_stage, bool force_bisection, bool cross_check) {
  EvalOptions o;
  o.second_stage = second_stage;
  o.qo_force_bisection = force_bisection;
  o.qo_cross_check = cross_check;
  return o;
}

RunConfig make_config(const std::string& config_json) {
  return apply_config_json(nlohmann::json::parse(config_json));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized-orientation DEA models";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<Technology>(m, "Technology")
      .def(py::init([](const Matrix& inputs, const Matrix& outputs, const std::string& rts,
                       std::vector<std::string> names) {
             return Technology(inputs, outputs, ReturnsToScale::parse(rts), std::move(names));
           }),
           py::arg("inputs"), py::arg("outputs"), py::arg("rts") = "crs", py::arg("names") = std::vector<std::string>{})
      .def_readonly("inputs", &Technology::inputs)
      .def_readonly("outputs", &Technology::outputs)
      .def_readonly("names", &Technology::names)
      .def_property_readonly("rts", [](const Technology& t) { return t.rts.to_string(); })
      .def_property_readonly("num_dmus", &Technology::num_dmus)
      .def("activity", [](const Technology& t, Index j) {
        if (j < 0 || j >= t.num_dmus()) throw py::index_error("DMU index out of range");
        return t.activity(j);
      });

  py::class_<Activity>(m, "Activity")
      .def(py::init([](const Vector& x, const Vector& y) { return Activity{x, y}; }), py::arg("x"), py::arg("y"))
      .def_readonly("x", &Activity::x)
      .def_readonly("y", &Activity::y);

  py::class_<Evaluation>(m, "Evaluation")
      .def_property_readonly("model", [](const Evaluation& e) { return to_string(e.model); })
      .def_readonly("method", &Evaluation::method)
      .def_readonly("beta", &Evaluation::beta)
      .def_readonly("rho", &Evaluation::rho)
      .def_readonly("theta", &Evaluation::theta)
      .def_readonly("phi", &Evaluation::phi)
      .def_readonly("tau_minus", &Evaluation::tau_minus)
      .def_readonly("tau_plus", &Evaluation::tau_plus)
      .def_readonly("target", &Evaluation::target)
      .def_readonly("projection", &Evaluation::projection)
      .def_readonly("lambda_", &Evaluation::lambda)
      .def_readonly("s_minus", &Evaluation::s_minus)
      .def_readonly("s_plus", &Evaluation::s_plus)
      .def_readonly("outside_technology", &Evaluation::outside_technology)
      .def_readonly("second_stage_applied", &Evaluation::second_stage_applied)
      .def_readonly("projection_may_vary", &Evaluation::projection_may_vary)
      .def_readonly("beta_gradient", &Evaluation::beta_gradient)
      .def_readonly("lp_solves", &Evaluation::lp_solves);

  m.def(
      "solve_lo",
      [](const Technology& tech, const Activity& subject, const Vector& d_minus, const Vector& d_plus,
         bool second_stage) {
        return solve_lo(tech, subject, make_orientation(d_minus, d_plus), make_options(second_stage, false, false));
      },
      py::arg("tech"), py::arg("subject"), py::arg("d_minus"), py::arg("d_plus"), py::arg("second_stage") = true);

  m.def(
      "solve_qo",
      [](const Technology& tech, const Activity& subject, const Vector& d_minus, const Vector& d_plus,
         bool second_stage, bool force_bisection, bool cross_check) {
        return solve_qo(tech, subject, make_orientation(d_minus, d_plus),
                        make_options(second_stage, force_bisection, cross_check));
      },
      py::arg("tech"), py::arg("subject"), py::arg("d_minus"), py::arg("d_plus"), py::arg("second_stage") = true,
      py::arg("force_bisection") = false, py::arg("cross_check") = false);

  m.def(
      "evaluate_external",
      [](const Technology& tech, const Activity& a, const Vector& d_minus, const Vector& d_plus,
         const std::string& model) {
        const Orientation d = make_orientation(d_minus, d_plus);
        if (model == "lo") return evaluate_lo_external(tech, a, d);
        if (model == "qo") return evaluate_qo_external(tech, a, d);
        throw DataError("model must be lo or qo, got '" + model + "'");
      },
      py::arg("tech"), py::arg("activity"), py::arg("d_minus"), py::arg("d_plus"), py::arg("model"));

  m.def("beta_q_from_beta_l", &beta_q_from_beta_l, py::arg("beta_l"), py::arg("d_minus"), py::arg("d_plus"));
  m.def("farrell_oriented_efficiency", &farrell_oriented_efficiency, py::arg("theta"), py::arg("phi"),
        py::arg("active_inputs"), py::arg("active_outputs"));
  m.def(
      "orientation_from_cost_gradient",
      [](const Vector& grad, const std::vector<bool>& controllable, Index num_inputs, const std::string& normalize) {
        GradientNormalization norm = GradientNormalization::Count;
        if (normalize == "inf_norm") {
          norm = GradientNormalization::InfNorm;
        } else if (normalize != "count") {
          throw DataError("normalization must be count or inf_norm");
        }
        const auto out = orientation_from_cost_gradient({grad, controllable, num_inputs}, norm);
        return py::make_tuple(out.orientation.d_minus, out.orientation.d_plus, out.beta_cost_multiplier);
      },
      py::arg("grad"), py::arg("controllable"), py::arg("num_inputs"), py::arg("normalize") = "count");

  m.def("in_technology", &in_technology, py::arg("tech"), py::arg("activity"));
  m.def("is_weakly_efficient", &is_weakly_efficient, py::arg("tech"), py::arg("activity"), py::arg("tol") = 1e-7);
  m.def("is_efficient", &is_efficient, py::arg("tech"), py::arg("activity"), py::arg("tol") = 1e-7);
  m.def(
      "brute_beta",
      [](const Technology& tech, const Activity& subject, const Vector& d_minus, const Vector& d_plus,
         const std::string& model) {
        if (model != "lo" && model != "qo") throw DataError("model must be lo or qo, got '" + model + "'");
        return oracle::brute_beta(tech, subject, make_orientation(d_minus, d_plus),
                                  model == "lo" ? Model::Lo : Model::Qo);
      },
      py::arg("tech"), py::arg("subject"), py::arg("d_minus"), py::arg("d_plus"), py::arg("model"));

  m.def(
      "_run_batch",
      [](const std::string& csv, const std::string& config_json) {
        std::istringstream in(csv);
        const Dataset data = read_csv(in);
        Report report;
        {
          py::gil_scoped_release release;
          report = run_batch(data, make_config(config_json));
        }
        return to_json(report).dump();
      },
      py::arg("csv"), py::arg("config_json"));

  m.def(
      "_self_check",
      [](const std::string& csv, const std::string& config_json, int samples, std::uint64_t seed) {
        std::istringstream in(csv);
        const Dataset data = read_csv(in);
        SelfCheckOptions opts;
        opts.monotonicity_samples = samples;
        opts.seed = seed;
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& r : self_check(data, make_config(config_json), opts)) {
          out.emplace_back(r.name, r.passed, r.detail);
        }
        return out;
      },
      py::arg("csv"), py::arg("config_json"), py::arg("samples") = 100, py::arg("seed") = 20240601);
}
