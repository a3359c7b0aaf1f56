#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fefflab/ball_pair.hpp"
#include "fefflab/cli.hpp"
#include "fefflab/errors.hpp"
#include "fefflab/families.hpp"
#include "fefflab/measures.hpp"
#include "fefflab/polynomial_literal.hpp"
#include "fefflab/report.hpp"
#include "fefflab/sphere_algebra.hpp"
#include "fefflab/surfaces.hpp"
#include "fefflab/variation.hpp"

namespace py = pybind11;
using namespace fefflab;

namespace {

py::dict pi_multiple(const PiMultiple& p) {
  py::dict d;
  d["exact"] = p.str();
  d["value"] = p.value();
  return d;
}

py::dict measure_dict(const MeasureReport& r) {
  py::dict d;
  d["surface"] = r.surface;
  d["grid"] = r.grid;
  d["fefferman"] = r.fefferman;
  d["volume"] = r.volume ? py::cast(*r.volume) : py::none();
  d["quotient"] = r.quotient ? py::cast(*r.quotient) : py::none();
  d["err_est"] = r.err_est;
  return d;
}

GraphSurface named_graph(const std::string& name, double radius) {
  if (name == "sphere") return sphere_graph(radius);
  if (name == "hyperboloid") return hyperboloid_graph(radius);
  if (name == "heisenberg") return heisenberg_graph();
  if (name == "paraboloid") return paraboloid_graph();
  if (name == "rigid-sqrt") return rigid_sqrt_graph();
  throw DomainError("unknown surface '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_fefflab, m) {
  m.doc() = "Fefferman measure lab";
  py::register_exception<Error>(m, "FefflabError", PyExc_ValueError);
  m.attr("SCHEMA_ID") = std::string(kSchemaId);

  m.def("report_schema", &report_schema, "JSON schema of every report, as text.");
  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = dispatch(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI command in-process; returns (exit_code, stdout, stderr).");

  m.def(
      "integrate_sphere", [](const std::string& p) { return pi_multiple(integrate_sphere(parse_polynomial(p))); },
      py::arg("poly"));
  m.def(
      "integrate_ball", [](const std::string& p) { return pi_multiple(integrate_ball(parse_polynomial(p))); },
      py::arg("poly"));
  m.def(
      "second_variation_Q", [](const std::string& p) { return pi_multiple(second_variation_Q(parse_polynomial(p))); },
      py::arg("poly"));
  m.def(
      "closed_form_coeff",
      [](const std::string& kind, unsigned j, unsigned k) {
        if (kind != "A" && kind != "B") throw DomainError("kind must be 'A' or 'B'");
        return pi_multiple(closed_form_coeff(kind == "A" ? ExampleKind::A : ExampleKind::B, j, k));
      },
      py::arg("kind"), py::arg("j"), py::arg("k"));
  m.def(
      "jl_check",
      [](const std::string& p) {
        const JLReport r = jl_check(parse_polynomial(p));
        py::dict d;
        d["lhs"] = r.lhs();
        d["rhs"] = r.rhs();
        d["holds"] = r.holds;
        d["equality"] = r.equality;
        return d;
      },
      py::arg("poly"));
  m.def(
      "hl_check",
      [](const std::string& p, unsigned n) {
        const HLReport r = hl_check(parse_polynomial(p), make_sphere_grid(n, n, n));
        py::dict d;
        d["lhs"] = r.lhs;
        d["norm43"] = r.norm43;
        d["bound"] = r.bound;
        d["ratio"] = r.ratio;
        d["holds"] = r.holds;
        return d;
      },
      py::arg("poly"), py::arg("n") = 32);

  m.def(
      "measure_sphere",
      [](double radius, unsigned n) { return measure_dict(measure_radial(RadialSurface::sphere(radius), make_sphere_grid(n, n, n))); },
      py::arg("radius") = 1.0, py::arg("n") = 32);
  m.def(
      "measure_polynomial",
      [](const std::string& p, double scale, unsigned n) {
        const SpherePotential g = SpherePotential::polynomial(parse_polynomial(p), scale);
        return measure_dict(measure_radial(RadialSurface::from_potential(g), make_sphere_grid(n, n, n)));
      },
      py::arg("poly"), py::arg("scale") = 1.0, py::arg("n") = 32);
  m.def(
      "kappa",
      [](const std::string& surface, double x, double y, double u, double radius) {
        return kappa_graph(named_graph(surface, radius), {{x, y}, u});
      },
      py::arg("surface"), py::arg("x"), py::arg("y"), py::arg("u"), py::arg("radius") = 1.0);
  m.def(
      "kappa_center",
      [](const std::string& surface, double radius) {
        const GraphSurface Z = named_graph(surface, radius);
        const auto c = Z.base.center();
        return kappa_graph(Z, {{c[0], c[1]}, c[2]});
      },
      py::arg("surface"), py::arg("radius") = 1.0);

  m.def(
      "q_ball_pair", [](double R, double theta) { return q_ball_pair({R, theta}); }, py::arg("R"), py::arg("theta"));
  m.def(
      "q_ball_pair_alt", [](double R, double theta) { return q_ball_pair_alt({R, theta}); }, py::arg("R"), py::arg("theta"));
  m.def(
      "q_ball_pair_R0",
      [](double theta) {
        const LimitResult r = q_ball_pair_limit({EdgeKind::R_zero, theta});
        return py::make_tuple(r.value, r.error);
      },
      py::arg("theta"), "Extrapolated R -> 0 edge value and its error estimate.");
  m.def(
      "minimize_q",
      [](unsigned n_R, unsigned n_theta) {
        MinimizeOptions opt;
        opt.n_R = n_R;
        opt.n_theta = n_theta;
        MinimizeResult r;
        {
          py::gil_scoped_release release;
          r = minimize_q(opt);
        }
        py::dict d;
        d["R"] = r.R;
        d["theta"] = r.theta;
        d["q"] = r.q;
        d["iterations"] = r.iterations;
        return d;
      },
      py::arg("n_R") = 64, py::arg("n_theta") = 64);

  m.def(
      "shear_measures", [](double eps) { return measure_dict(shear_measures(ShearSurface::log_divergent(eps), shear_disk_grid(eps))); },
      py::arg("eps"));
  m.def(
      "tube_ellipse",
      [](double a, double b, unsigned n) {
        const TubeReport r = tube_measures(ConvexCurve::ellipse(a, b), n);
        return py::make_tuple(r.blaschke, r.area, r.ratio);
      },
      py::arg("a"), py::arg("b"), py::arg("n") = 512);
}
