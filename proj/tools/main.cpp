#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace wl1proj::cli;

int main(int argc, char** argv) {
  CLI::App app{"Weighted l1 projection onto the hyperplane sum(x) = 1, and LCC encoding"};
  app.require_subcommand(1);

  ProjectOptions project;
  auto* project_cmd = app.add_subcommand("project", "Project y under weights d");
  project_cmd->add_option("--y", project.y_path, "Vector file with y (.csv or .json)")->required();
  auto* d_opt = project_cmd->add_option("--d", project.d_path, "Vector file with weights d");
  auto* w_opt = project_cmd->add_option("--uniform-weight", project.uniform_weight,
                                        "Use the same weight for every coordinate");
  d_opt->excludes(w_opt);
  project_cmd->add_option("-o,--output", project.output_path, "Output JSON path ('-' = stdout)");
  project_cmd->add_option("--membership-tolerance", project.membership_tolerance);
  project_cmd->add_option("--feasibility-tolerance", project.feasibility_tolerance);
  project_cmd->add_flag("--naive", project.naive, "Use the O(n^2) enumeration solver");

  LccOptions lcc;
  auto* lcc_cmd = app.add_subcommand("lcc", "Encode a sample over landmark columns");
  lcc_cmd->add_option("--u", lcc.u_path, "Vector file with the sample")->required();
  lcc_cmd->add_option("--v", lcc.v_path, "Matrix file, one landmark per column")->required();
  lcc_cmd->add_option("--lambda", lcc.lambda, "Locality trade-off (>= 0)")->required();
  lcc_cmd->add_option("--max-iterations", lcc.max_iterations);
  lcc_cmd->add_option("--tolerance", lcc.tolerance, "Fixed-point tolerance");
  lcc_cmd->add_option("--step-size", lcc.step_size, "Override 1/L");
  lcc_cmd->add_option("-o,--output", lcc.output_path, "Output JSON path ('-' = stdout)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check solvers on random instances");
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--count", verify.count);
  verify_cmd->add_option("--n-min", verify.n_min);
  verify_cmd->add_option("--n-max", verify.n_max);
  verify_cmd->add_option("--scale", verify.scale);
  verify_cmd->add_option("--tolerance", verify.tolerance, "Allowed alpha / x gap");
  verify_cmd->add_option("--kkt-tolerance", verify.kkt_tolerance);

  BenchOptions bench;
  std::vector<double> n_values;
  auto* bench_cmd = app.add_subcommand("bench", "Time the projection for several sizes");
  bench_cmd->add_option("--n", n_values, "Problem sizes, e.g. --n 1e4 1e5 1e6")->required();
  bench_cmd->add_option("--repeats", bench.repeats);
  bench_cmd->add_option("--seed", bench.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsageError;
  }

  if (*project_cmd) return cmd_project(project, std::cout, std::cerr);
  if (*lcc_cmd) return cmd_lcc(lcc, std::cout, std::cerr);
  if (*verify_cmd) return cmd_verify(verify, std::cout, std::cerr);
  if (*bench_cmd) {
    for (double v : n_values) {
      if (!(v >= 1.0) || v != std::floor(v) || v > 1e12) {
        std::cerr << "bench: invalid size " << v << "\n";
        return kUsageError;
      }
      bench.n_list.push_back(static_cast<std::size_t>(v));
    }
    return cmd_bench(bench, std::cout, std::cerr);
  }
  return kUsageError;
}
