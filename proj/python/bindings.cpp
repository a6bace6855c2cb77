#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ratdyn/cli.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/io.hpp"

namespace py = pybind11;
using namespace ratdyn;

namespace {

// Reports cross the boundary as the same JSON the CLI writes.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ToleranceConfig tolerances(const py::dict& overrides) {
  if (overrides.empty()) return {};
  auto text = py::module_::import("json").attr("dumps")(overrides).cast<std::string>();
  return tolerances_from_json(Json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_ratdyn, m) {
  m.doc() = "Complex rational difference equation toolkit";

  // Later registrations are tried first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ValueError);
  py::register_exception<NoDistinctCycleError>(m, "NoDistinctCycleError", PyExc_ValueError);
  py::register_exception<SingularError>(m, "SingularError", PyExc_ArithmeticError);
  py::register_exception<OrbitDiedError>(m, "OrbitDiedError", PyExc_ArithmeticError);

  m.def("step", [](Complex a, Complex b, Complex z_prev, Complex z_curr) {
    return step({a, b}, {z_prev, z_curr, 0});
  });

  m.def(
      "iterate",
      [](Complex a, Complex b, Complex z_prev, Complex z_curr, const py::dict& tol) {
        Orbit o = iterate({a, b}, {z_prev, z_curr, 0}, tolerances(tol));
        return py::make_tuple(o.points, to_py(to_json(o.outcome)));
      },
      py::arg("alpha"), py::arg("beta"), py::arg("z_prev"), py::arg("z_curr"),
      py::arg("tolerances") = py::dict());

  m.def("equilibria", [](Complex a, Complex b) {
    auto eqs = equilibria({a, b});
    return py::make_tuple(to_py(to_json(eqs[0])), to_py(to_json(eqs[1])));
  });

  m.def("stability_margin", [](Complex a, Complex b, bool plus_branch) {
    return stability_margin({a, b}, plus_branch ? Branch::plus : Branch::minus);
  }, py::arg("alpha"), py::arg("beta"), py::arg("plus_branch") = false);

  m.def("saddle_margin", [](Complex a, Complex b, bool plus_branch) {
    return saddle_margin({a, b}, plus_branch ? Branch::plus : Branch::minus);
  }, py::arg("alpha"), py::arg("beta"), py::arg("plus_branch") = true);

  m.def("condition_check", [](Complex a, Complex b) { return to_py(to_json(condition_check({a, b}))); });

  m.def("two_cycle", [](Complex a, Complex b) {
    Params p{a, b};
    TwoCycle c = two_cycle(p);
    py::dict d;
    d["phi"] = c.phi;
    d["psi"] = c.psi;
    d["stability"] = to_py(to_json(classify_two_cycle(p, c)));
    return d;
  });

  m.def(
      "lyapunov_max",
      [](Complex a, Complex b, Complex z_prev, Complex z_curr, long n_steps) {
        return to_py(to_json(lyapunov_max({a, b}, {z_prev, z_curr, 0}, {}, n_steps)));
      },
      py::arg("alpha"), py::arg("beta"), py::arg("z_prev"), py::arg("z_curr"),
      py::arg("n_steps") = kDefaultLyapunovSteps);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Run a CLI command in-process; returns (exit_code, stdout, stderr).");
}
