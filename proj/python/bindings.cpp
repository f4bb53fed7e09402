#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lmm/cli.hpp"
#include "lmm/harness.hpp"
#include "lmm/report_io.hpp"
#include "lmm/rgre.hpp"
#include "lmm/stability.hpp"

namespace py = pybind11;
using namespace lmm;

namespace {

py::dict trajectory_dict(const Trajectory& traj) {
  const auto rows = static_cast<py::ssize_t>(traj.states.size());
  const auto cols = rows ? static_cast<py::ssize_t>(traj.states[0].size()) : 0;
  py::array_t<double> t(rows);
  py::array_t<double> y({rows, cols});
  auto tv = t.mutable_unchecked<1>();
  auto yv = y.mutable_unchecked<2>();
  for (py::ssize_t n = 0; n < rows; ++n) {
    tv(n) = traj.time(n);
    for (py::ssize_t i = 0; i < cols; ++i) yv(n, i) = traj.states[n][i];
  }
  py::dict d;
  d["t"] = t;
  d["y"] = y;
  d["f_evals"] = traj.f_eval_count;
  return d;
}

ConvergenceReport study(const std::string& method, int ell, const std::string& problem,
                        const std::vector<long>& n, const std::string& error) {
  py::gil_scoped_release release;
  return convergence_study(method_from_name(method), ell, find_problem(problem), n, {}, nullptr,
                           error_measure_from_name(error));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Linear multistep methods with repeated global Richardson extrapolation";

  static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericalError& e) {
      py::set_error(numerical_error, e.what());
    }
  });

  m.def("method_names", &method_names);
  m.def("problem_names", &problem_names);

  m.def("gamma", [](int p, int ell) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& g : gamma_coefficients(p, ell).gamma) {
      out.emplace_back(numerator(g).str(), denominator(g).str());
    }
    return out;
  }, py::arg("p"), py::arg("ell"), "Exact weights as (numerator, denominator) strings.");

  m.def("solve", [](const std::string& method, const std::string& problem, long n) {
    Trajectory traj;
    {
      py::gil_scoped_release release;
      traj = integrate(method_from_name(method), find_problem(problem), n);
    }
    return trajectory_dict(traj);
  }, py::arg("method"), py::arg("problem"), py::arg("n"));

  m.def("rgre", [](const std::string& method, const std::string& problem, long n, int ell) {
    RgreResult r;
    {
      py::gil_scoped_release release;
      r = run_rgre(method_from_name(method), find_problem(problem), n, ell);
    }
    py::dict d = trajectory_dict(r.combined);
    d["f_evals"] = r.total_f_evals;
    d["work_ratio"] = work_ratio(r);
    return d;
  }, py::arg("method"), py::arg("problem"), py::arg("n"), py::arg("ell"));

  m.def("converge", [](const std::string& method, int ell, const std::string& problem,
                       const std::vector<long>& n, const std::string& error) {
    py::list rows;
    for (const auto& row : study(method, ell, problem, n, error).rows) {
      py::dict d;
      d["n_coarse"] = row.n_coarse;
      d["max_error"] = row.max_error;
      d["estimated_order"] = row.estimated_order;
      d["f_evals"] = row.f_evals;
      rows.append(d);
    }
    return rows;
  }, py::arg("method"), py::arg("ell"), py::arg("problem"), py::arg("n"),
        py::arg("error") = "all");

  m.def("converge_csv", [](const std::string& method, int ell, const std::string& problem,
                           const std::vector<long>& n, const std::string& error) {
    std::ostringstream os;
    write_convergence_csv(os, study(method, ell, problem, n, error));
    return os.str();
  }, py::arg("method"), py::arg("ell"), py::arg("problem"), py::arg("n"),
        py::arg("error") = "all");

  m.def("stability_angle", [](const std::string& method, int ell) {
    return alpha_angle(method_from_name(method).coeffs, ell);
  }, py::arg("method"), py::arg("ell") = 0);

  m.def("root_condition", [](const std::string& method) {
    return check_root_condition(method_from_name(method).coeffs).satisfied;
  }, py::arg("method"));

  m.def("is_stable", [](const std::string& method, std::complex<double> mu, int ell) {
    const auto c = method_from_name(method).coeffs;
    return (ell == 0 ? in_stability_region(c, mu) : in_rgre_stability_region(c, ell, mu)).stable;
  }, py::arg("method"), py::arg("mu"), py::arg("ell") = 0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> argv{"lmmrgre"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = cli::run(argv, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs one CLI subcommand; returns (exit code, stdout, stderr).");
}
