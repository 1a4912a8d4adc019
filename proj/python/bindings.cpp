#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "wl1proj/lcc.hpp"
#include "wl1proj/oracle.hpp"
#include "wl1proj/projection.hpp"

namespace py = pybind11;
using namespace wl1proj;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) {
    throw InvalidInput("landmark matrix must be two-dimensional");
  }
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return Matrix(rows, cols, std::vector<double>(a.data(), a.data() + rows * cols));
}

py::dict solution_dict(const ProjectionSolution& s) {
  py::dict out;
  out["x"] = to_array(s.x);
  out["alpha"] = s.alpha;
  out["n_pos"] = s.n_pos;
  out["n_neg"] = s.n_neg;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact weighted l1 projection onto sum(x) = 1, verification oracles and LCC";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);

  m.def(
      "solve_projection",
      [](std::vector<double> y, std::vector<double> d, double membership_tolerance,
         double feasibility_tolerance) {
        SolverConfig config;
        config.membership_tolerance = membership_tolerance;
        config.feasibility_tolerance = feasibility_tolerance;
        return solution_dict(
            solve_projection(ProjectionProblem(std::move(y), std::move(d)), config));
      },
      py::arg("y"), py::arg("d"), py::arg("membership_tolerance") = 0.0,
      py::arg("feasibility_tolerance") = 1e-9,
      "Minimize 1/2 ||x - y||^2 + sum d_i |x_i| subject to sum(x) = 1.");

  m.def(
      "naive_enumeration_solve",
      [](std::vector<double> y, std::vector<double> d) {
        return solution_dict(naive_enumeration_solve(ProjectionProblem(std::move(y), std::move(d))));
      },
      py::arg("y"), py::arg("d"));

  m.def(
      "bisection_solve",
      [](std::vector<double> y, std::vector<double> d, std::size_t max_iterations) {
        return solution_dict(
            bisection_solve(ProjectionProblem(std::move(y), std::move(d)), max_iterations));
      },
      py::arg("y"), py::arg("d"), py::arg("max_iterations") = 200);

  m.def(
      "phi",
      [](double alpha, std::vector<double> y, std::vector<double> d) {
        return phi(alpha, shifted_bounds(ProjectionProblem(std::move(y), std::move(d))));
      },
      py::arg("alpha"), py::arg("y"), py::arg("d"));

  m.def(
      "kkt_residual",
      [](std::vector<double> y, std::vector<double> d, std::vector<double> x, double alpha,
         double tolerance) {
        const KktReport r =
            kkt_residual(ProjectionProblem(std::move(y), std::move(d)), x, alpha, tolerance);
        py::dict out;
        out["max_stationarity_residual"] = r.max_stationarity_residual;
        out["max_subgradient_violation"] = r.max_subgradient_violation;
        out["feasibility_residual"] = r.feasibility_residual;
        out["passed"] = r.passed;
        return out;
      },
      py::arg("y"), py::arg("d"), py::arg("x"), py::arg("alpha"), py::arg("tolerance") = 1e-9);

  m.def(
      "random_problem",
      [](std::uint64_t seed, std::size_t n, double value_scale, double zero_weight_fraction,
         double duplicate_fraction, double grid_step) {
        RandomProblemOptions opt;
        opt.seed = seed;
        opt.n = n;
        opt.value_scale = value_scale;
        opt.zero_weight_fraction = zero_weight_fraction;
        opt.duplicate_fraction = duplicate_fraction;
        opt.grid_step = grid_step;
        const ProjectionProblem p = random_problem(opt);
        return py::make_tuple(to_array({p.y().begin(), p.y().end()}),
                              to_array({p.d().begin(), p.d().end()}));
      },
      py::arg("seed"), py::arg("n"), py::arg("value_scale") = 1.0,
      py::arg("zero_weight_fraction") = 0.0, py::arg("duplicate_fraction") = 0.0,
      py::arg("grid_step") = 0.0, "Returns (y, d).");

  m.def(
      "compare_solvers",
      [](std::vector<double> y, std::vector<double> d) {
        const OracleComparison c = compare_solvers(ProjectionProblem(std::move(y), std::move(d)));
        py::dict out;
        out["alpha_gap"] = c.alpha_gap;
        out["x_gap"] = c.x_gap;
        out["per_solver_alpha"] = c.per_solver_alpha;
        out["fast_kkt_residual"] = c.fast_kkt_residual;
        return out;
      },
      py::arg("y"), py::arg("d"));

  m.def(
      "prox_step",
      [](std::vector<double> z, std::vector<double> d, double step) {
        return to_array(prox_step(z, d, step));
      },
      py::arg("z"), py::arg("d"), py::arg("step"));

  m.def(
      "locality_weights",
      [](std::vector<double> u, const py::array_t<double, py::array::c_style | py::array::forcecast>& v,
         double lam) { return to_array(locality_weights(LccProblem(std::move(u), to_matrix(v), lam))); },
      py::arg("u"), py::arg("V"), py::arg("lam"));

  m.def(
      "lcc_objective",
      [](std::vector<double> w, std::vector<double> u,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& v, double lam) {
        return lcc_objective(w, LccProblem(std::move(u), to_matrix(v), lam));
      },
      py::arg("w"), py::arg("u"), py::arg("V"), py::arg("lam"));

  m.def(
      "solve_lcc",
      [](std::vector<double> u, const py::array_t<double, py::array::c_style | py::array::forcecast>& v,
         double lam, std::size_t max_iterations, double tolerance,
         std::optional<double> step_size) {
        FistaConfig config;
        config.max_iterations = max_iterations;
        config.fixed_point_tolerance = tolerance;
        config.step_size = step_size;
        LccProblem problem(std::move(u), to_matrix(v), lam);
        LccSolution s;
        {
          py::gil_scoped_release release;
          s = solve_lcc(problem, config);
        }
        py::dict out;
        out["w"] = to_array(s.w);
        out["objective"] = s.objective;
        out["iterations"] = s.iterations_used;
        out["converged"] = s.converged;
        return out;
      },
      py::arg("u"), py::arg("V"), py::arg("lam"), py::arg("max_iterations") = 10000,
      py::arg("tolerance") = 1e-8, py::arg("step_size") = py::none(),
      "Encode u over the columns of V by accelerated proximal gradient.");
}
