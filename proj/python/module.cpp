#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "igaplate/cases.hpp"
#include "igaplate/errors.hpp"

namespace py = pybind11;
using namespace igaplate;

namespace {

// The drivers log to a stream; collect that into the returned string.
template <class Fn>
std::string capture_log(Fn&& fn) {
  std::ostringstream log;
  fn(log);
  return log.str();
}

}  // namespace

PYBIND11_MODULE(igaplate, m) {
  m.doc() =
      "Shear-locking-free bending of moderately thick plates on smooth "
      "spline patches.  Works in thickness-rescaled variables: in-plane "
      "coordinates in units of the thickness, rotations premultiplied by "
      "the thickness, load premultiplied by thickness over shear modulus.";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<NumericError>(m, "NumericError");

  py::enum_<CaseKind>(m, "CaseKind")
      .value("disk_clamped", CaseKind::disk_clamped)
      .value("disk_ss", CaseKind::disk_ss)
      .value("rect_cantilever", CaseKind::rect_cantilever)
      .value("rect_ss", CaseKind::rect_ss)
      .value("rect_clamped_all", CaseKind::rect_clamped_all)
      .value("custom", CaseKind::custom);

  py::enum_<BcKind>(m, "BcKind")
      .value("free_edge", BcKind::free_edge)
      .value("soft_simple", BcKind::soft_simple)
      .value("clamped", BcKind::clamped);

  py::enum_<SolverKind>(m, "SolverKind")
      .value("direct", SolverKind::direct)
      .value("conjugate_gradient", SolverKind::conjugate_gradient);

  m.def("sigma_ratio", &sigma_ratio, py::arg("nu"),
        "material ratio nu / (1 - nu)");

  py::class_<PhysicalCase>(m, "PhysicalCase",
                           "plate data in physical units (SI)")
      .def(py::init<>())
      .def_readwrite("thickness", &PhysicalCase::thickness)
      .def_readwrite("span", &PhysicalCase::span)
      .def_readwrite("shear_modulus", &PhysicalCase::shear_modulus)
      .def_readwrite("nu", &PhysicalCase::nu)
      .def_readwrite("pressure", &PhysicalCase::pressure);

  py::class_<RescaledInputs>(m, "RescaledInputs",
                             "conversion factors to/from physical units")
      .def_readonly("span", &RescaledInputs::span)
      .def_readonly("fbar", &RescaledInputs::fbar)
      .def_readonly("deflection_scale", &RescaledInputs::deflection_scale)
      .def_readonly("rotation_scale", &RescaledInputs::rotation_scale)
      .def_readonly("coordinate_scale", &RescaledInputs::coordinate_scale);

  m.def("to_rescaled", &to_rescaled, py::arg("physical"),
        "conversion factors for a physical plate; running the model with "
        "the returned fbar makes computed deflections physical");

  py::class_<AnalyticSolution>(m, "AnalyticSolution",
                               "closed-form reference profile of one "
                               "coordinate (radius or axial position)")
      .def_property_readonly(
          "kind",
          [](const AnalyticSolution& s) {
            return s.kind == AnalyticSolution::Kind::radial ? "radial"
                                                            : "axial";
          })
      .def_readonly("domain_end", &AnalyticSolution::domain_end)
      .def_readonly("nu", &AnalyticSolution::nu)
      .def_readonly("load", &AnalyticSolution::load)
      .def_readonly("deflection", &AnalyticSolution::deflection)
      .def_readonly("true_deflection", &AnalyticSolution::true_deflection)
      .def_readonly("rotation", &AnalyticSolution::rotation)
      .def_readonly("shear_angle", &AnalyticSolution::shear_angle);

  m.def("disk_clamped_solution", &disk_clamped_solution, py::arg("R"),
        py::arg("nu"), py::arg("load"));
  m.def("disk_simply_supported_solution", &disk_simply_supported_solution,
        py::arg("R"), py::arg("nu"), py::arg("load"));
  m.def("disk_kirchhoff_solution", &disk_kirchhoff_solution, py::arg("R"),
        py::arg("nu"), py::arg("load"), py::arg("simply_supported"));
  m.def("cantilever_solution", &cantilever_solution, py::arg("L"),
        py::arg("nu"), py::arg("load"));
  m.def("beam_simply_supported_solution", &beam_simply_supported_solution,
        py::arg("L"), py::arg("nu"), py::arg("load"));
  m.def("beam_kirchhoff_solution", &beam_kirchhoff_solution, py::arg("L"),
        py::arg("nu"), py::arg("load"), py::arg("simply_supported"));

  py::class_<CaseConfig>(m, "CaseConfig",
                         "one study: case kind, geometry, material, "
                         "discretization, outputs")
      .def(py::init<>())
      .def_readwrite("kind", &CaseConfig::kind)
      .def_readwrite("name", &CaseConfig::name)
      .def_readwrite("radius", &CaseConfig::radius)
      .def_readwrite("length", &CaseConfig::length)
      .def_readwrite("width", &CaseConfig::width)
      .def_readwrite("nu", &CaseConfig::nu)
      .def_readwrite("fbar", &CaseConfig::fbar)
      .def_readwrite("has_load", &CaseConfig::has_load)
      .def_readwrite("has_physical", &CaseConfig::has_physical)
      .def_readwrite("physical", &CaseConfig::physical)
      .def_readwrite("youngs", &CaseConfig::youngs)
      .def_readwrite("density", &CaseConfig::density)
      .def_readonly("scales", &CaseConfig::scales)
      .def_readwrite("degree_p", &CaseConfig::degree_p)
      .def_readwrite("degree_q", &CaseConfig::degree_q)
      .def_readwrite("refine", &CaseConfig::refine)
      .def_readwrite("nel1", &CaseConfig::nel1)
      .def_readwrite("nel2", &CaseConfig::nel2)
      .def_readwrite("solver", &CaseConfig::solver)
      .def_readwrite("has_probe", &CaseConfig::has_probe)
      .def_readwrite("probe", &CaseConfig::probe)
      .def_readwrite("out_dir", &CaseConfig::out_dir)
      .def_readwrite("line_samples", &CaseConfig::line_samples)
      .def_readwrite("viz_per_span", &CaseConfig::viz_per_span)
      .def_readwrite("custom_shape", &CaseConfig::custom_shape)
      .def_readwrite("edge_rim", &CaseConfig::edge_rim)
      .def_readwrite("edge_left", &CaseConfig::edge_left)
      .def_readwrite("edge_right", &CaseConfig::edge_right)
      .def_readwrite("edge_bottom", &CaseConfig::edge_bottom)
      .def_readwrite("edge_top", &CaseConfig::edge_top)
      .def("validate", &CaseConfig::validate)
      .def("basename", &CaseConfig::basename)
      .def("probe_point", &CaseConfig::probe_point);

  m.def("parse_config_file", &parse_config_file, py::arg("path"));
  m.def("parse_config_text", &parse_config_text, py::arg("text"));
  m.def("case_has_oracle", &case_has_oracle, py::arg("kind"));
  m.def("case_oracle", &case_oracle, py::arg("config"));
  m.def("case_kirchhoff", &case_kirchhoff, py::arg("config"));

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("relative_residual", &SolveReport::relative_residual)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("seconds", &SolveReport::seconds)
      .def_readonly("num_free", &SolveReport::num_free)
      .def_readonly("nonzeros", &SolveReport::nonzeros);

  py::class_<DofMap>(m, "DofMap")
      .def_readonly("num_free", &DofMap::num_free)
      .def("num_dofs", &DofMap::num_dofs);

  py::class_<ProbeLocation>(m, "ProbeLocation")
      .def_readonly("patch", &ProbeLocation::patch)
      .def_readonly("xi", &ProbeLocation::xi)
      .def_readonly("eta", &ProbeLocation::eta);

  py::class_<FieldSample>(m, "FieldSample",
                          "solution values and derivatives at one point")
      .def_readonly("x", &FieldSample::x)
      .def_readonly("u", &FieldSample::u)
      .def_readonly("psi1", &FieldSample::psi1)
      .def_readonly("psi2", &FieldSample::psi2)
      .def_readonly("du", &FieldSample::du)
      .def_readonly("dpsi1", &FieldSample::dpsi1)
      .def_readonly("dpsi2", &FieldSample::dpsi2)
      .def_readonly("u_check", &FieldSample::u_check)
      .def_readonly("phi", &FieldSample::phi);

  py::class_<LineSample>(m, "LineSample")
      .def_readonly("s", &LineSample::s)
      .def_readonly("u", &LineSample::u)
      .def_readonly("u_check", &LineSample::u_check)
      .def_readonly("psi", &LineSample::psi)
      .def_readonly("phi", &LineSample::phi)
      .def_readonly("phi_rec", &LineSample::phi_rec);

  py::class_<ConvergenceRow>(m, "ConvergenceRow")
      .def_readonly("dofs", &ConvergenceRow::dofs)
      .def_readonly("h", &ConvergenceRow::h)
      .def_readonly("probe", &ConvergenceRow::probe)
      .def_readonly("probe_rel_error", &ConvergenceRow::probe_rel_error)
      .def_readonly("l2", &ConvergenceRow::l2)
      .def_readonly("l2_check", &ConvergenceRow::l2_check);

  m.def("fit_slope", &fit_slope, py::arg("rows"),
        "least-squares slope of log(l2) vs log(h) over the last three rows "
        "above the round-off floor");

  py::class_<SolutionField>(m, "SolutionField",
                            "solved coefficients bound to their model; "
                            "created by CaseResult.field()")
      .def("at", &SolutionField::at, py::arg("patch"), py::arg("xi"),
           py::arg("eta"))
      .def("recovered_phi", &SolutionField::recovered_phi, py::arg("patch"),
           py::arg("xi"), py::arg("eta"))
      .def_property_readonly("has_recovered_gradient",
                             &SolutionField::has_recovered_gradient);

  m.def("recover_gradient", &recover_gradient, py::arg("field"),
        "project the deflection gradient onto the solution space for "
        "smoothed shear-angle evaluation");
  m.def("l2_error", &l2_error, py::arg("field"), py::arg("oracle"),
        py::arg("corrected") = false,
        "normalized squared-error ratio against a closed-form profile "
        "(no square root)");
  m.def("sample_radial", &sample_radial, py::arg("field"), py::arg("n"),
        "n samples along the +x radial ray of a disk");
  m.def("sample_centerline", &sample_centerline, py::arg("field"),
        py::arg("n"), "n samples along the centerline of a strip");

  py::class_<CaseResult>(m, "CaseResult",
                         "a solved case; keep it alive while using fields "
                         "created from it")
      .def_readonly("config", &CaseResult::config)
      .def_readonly("dofs", &CaseResult::dofs)
      .def_readonly("coeffs", &CaseResult::coeffs)
      .def_readonly("report", &CaseResult::report)
      .def_readonly("probe_x", &CaseResult::probe_x)
      .def_readonly("probe_u", &CaseResult::probe_u)
      .def_readonly("probe_u_check", &CaseResult::probe_u_check)
      .def("field", &CaseResult::field, py::keep_alive<0, 1>())
      .def(
          "locate",
          [](const CaseResult& result, const Eigen::Vector2d& x) {
            return locate_point(result.model, x);
          },
          py::arg("x"),
          "parametric preimage of a physical point on the solved model")
      .def("describe",
           [](const CaseResult& result) { return describe(result.model); });

  m.def("solve_case", &solve_case, py::arg("config"),
        "mesh, assemble and solve one configured case");
  m.def(
      "run_case",
      [](const CaseConfig& config) {
        return capture_log([&](std::ostream& log) { run_case(config, log); });
      },
      py::arg("config"),
      "solve and write the field snapshot, line profile and summary to "
      "config.out_dir; returns the progress log");
  m.def("convergence_rows", &convergence_rows, py::arg("config"),
        py::arg("levels"),
        "solve a ladder of uniform refinements against the case oracle");
  m.def(
      "run_convergence",
      [](const CaseConfig& config, int levels) {
        return capture_log(
            [&](std::ostream& log) { run_convergence(config, levels, log); });
      },
      py::arg("config"), py::arg("levels"),
      "convergence ladder plus csv output; returns the progress log");
  m.def(
      "run_compare",
      [](const CaseConfig& config) {
        return capture_log(
            [&](std::ostream& log) { run_compare(config, log); });
      },
      py::arg("config"),
      "line profile against the closed-form and thin-plate references; "
      "returns the progress log");
}
