#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "laguerre/cli.hpp"
#include "laguerre/construction.hpp"
#include "laguerre/families.hpp"
#include "laguerre/verifier.hpp"

namespace py = pybind11;
using namespace laguerre;

namespace {

std::shared_ptr<Chart> chart_from(const std::string& surface, const std::string& params) {
  return make_chart(surface, params.empty() ? nlohmann::json::object()
                                            : nlohmann::json::parse(params));
}

}  // namespace

PYBIND11_MODULE(_laguerre, m) {
  m.doc() = "Laguerre invariants of hypersurfaces";

  py::register_exception<Error>(m, "LaguerreError");

  m.def("lag_ip", [](const Vec& u, const Vec& v) { return lag_ip(u, v); });
  m.def("vector_P", [](int n) { return vector_P(n).coords; });
  m.def("is_laguerre_transform", &is_laguerre_transform, py::arg("T"), py::arg("tol") = 1e-10);
  m.def("laguerre_transform_defect", &laguerre_transform_defect);
  m.def("random_laguerre_rotation", &random_laguerre_rotation, py::arg("n"), py::arg("seed"));
  m.def("b_from_a", &b_from_a);
  m.def("two_curvature_targets", &two_curvature_targets);
  m.def("laguerre_immersion_tau", &laguerre_immersion_tau);

  m.def(
      "principal_curvatures",
      [](const std::string& surface, const std::string& params, const Vec& u) {
        auto chart = chart_from(surface, params);
        const CurvatureFrame f = principal_decomposition(chart->evaluate_jet(u));
        py::dict d;
        d["k"] = f.k;
        d["radii"] = f.radii;
        d["r"] = f.r;
        d["rho"] = f.rho;
        return d;
      },
      py::arg("surface"), py::arg("params"), py::arg("u"));

  m.def(
      "verify_json",
      [](const std::string& surface, const std::string& params, double half_width,
         int points_per_axis) {
        auto chart = chart_from(surface, params);
        Grid g;
        g.center = Vec::Zero(chart->n());
        g.half_width = half_width;
        g.points_per_axis = points_per_axis;
        return run_suite(*chart, g).to_json().dump();
      },
      py::arg("surface"), py::arg("params"), py::arg("half_width") = 0.4,
      py::arg("points_per_axis") = 5);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
