#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "io.hpp"
#include "wl1proj/lcc.hpp"
#include "wl1proj/oracle.hpp"
#include "wl1proj/projection.hpp"

namespace wl1proj::cli {

namespace {

void emit(const std::string& path, const std::string& payload, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << payload;
  } else {
    io::write_file(path, payload);
  }
}

// Maps any exception escaping a command body to its exit code.
template <typename Body>
int guarded(std::ostream& err, const char* command, Body&& body) {
  try {
    return body();
  } catch (const InvalidInput& e) {
    err << command << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const ContractViolation& e) {
    err << command << ": internal error: " << e.what() << "\n";
    return kContractViolation;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// Instance k of a verification run. Instances cycle through four batches:
// continuous, duplicated entries, zero weights, and a coarse grid where
// breakpoints from different coordinates coincide.
ProjectionProblem verification_instance(const VerifyOptions& options, std::size_t k) {
  const std::uint64_t instance_seed = splitmix64(options.seed ^ splitmix64(k));
  std::mt19937_64 rng(instance_seed);
  RandomProblemOptions gen;
  gen.seed = rng();
  gen.n = std::uniform_int_distribution<std::size_t>(options.n_min, options.n_max)(rng);
  gen.value_scale = options.scale;
  switch (k % 4) {
    case 1:
      gen.duplicate_fraction = 0.4;
      break;
    case 2:
      gen.zero_weight_fraction = (k / 4) % 3 == 0 ? 1.0 : 0.5;
      break;
    case 3:
      gen.grid_step = options.scale / 8.0;
      gen.duplicate_fraction = 0.2;
      gen.zero_weight_fraction = 0.25;
      break;
    default:
      break;
  }
  return random_problem(gen);
}

void describe_instance(std::ostream& err, const VerifyOptions& options, std::size_t k,
                       const ProjectionProblem& problem) {
  err << "  seed=" << options.seed << " instance=" << k << " n=" << problem.size() << "\n";
  err << "  y=" << nlohmann::json(std::vector<double>(problem.y().begin(), problem.y().end())).dump()
      << "\n";
  err << "  d=" << nlohmann::json(std::vector<double>(problem.d().begin(), problem.d().end())).dump()
      << "\n";
}

}  // namespace

int cmd_project(const ProjectOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, "project", [&] {
    if (options.d_path.has_value() == options.uniform_weight.has_value()) {
      throw InvalidInput("give exactly one of --d and --uniform-weight");
    }
    std::vector<double> y = io::read_vector(options.y_path);
    ProjectionProblem problem =
        options.d_path ? ProjectionProblem(std::move(y), io::read_vector(*options.d_path))
                       : ProjectionProblem::uniform(std::move(y), *options.uniform_weight);
    SolverConfig config;
    config.membership_tolerance = options.membership_tolerance;
    config.feasibility_tolerance = options.feasibility_tolerance;
    config.validate();

    const ProjectionSolution solution =
        options.naive ? naive_enumeration_solve(problem) : solve_projection(problem, config);
    const KktReport kkt = kkt_residual(problem, solution.x, solution.alpha, 0.0);

    nlohmann::json doc;
    doc["x"] = solution.x;
    doc["alpha"] = solution.alpha;
    doc["n_pos"] = solution.n_pos;
    doc["n_neg"] = solution.n_neg;
    doc["kkt_max_residual"] = kkt.max_residual();
    emit(options.output_path, doc.dump(2) + "\n", out);
    return kSuccess;
  });
}

int cmd_lcc(const LccOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, "lcc", [&] {
    LccProblem problem(io::read_vector(options.u_path), io::read_matrix(options.v_path),
                       options.lambda);
    FistaConfig config;
    config.max_iterations = options.max_iterations;
    config.fixed_point_tolerance = options.tolerance;
    config.step_size = options.step_size;
    const LccSolution solution = solve_lcc(problem, config);

    nlohmann::json doc;
    doc["w"] = solution.w;
    doc["objective"] = solution.objective;
    doc["iterations"] = solution.iterations_used;
    doc["converged"] = solution.converged;
    emit(options.output_path, doc.dump(2) + "\n", out);
    return kSuccess;
  });
}

VerifySummary run_verification(const VerifyOptions& options, std::ostream& err) {
  if (options.count == 0) throw InvalidInput("count must be >= 1");
  if (options.n_min == 0 || options.n_min > options.n_max) {
    throw InvalidInput("need 1 <= n_min <= n_max");
  }
  if (!std::isfinite(options.scale) || options.scale <= 0.0) {
    throw InvalidInput("scale must be > 0");
  }
  if (!(options.tolerance >= 0.0) || !(options.kkt_tolerance >= 0.0)) {
    throw InvalidInput("tolerances must be >= 0");
  }

  VerifySummary summary;
  for (std::size_t k = 0; k < options.count; ++k) {
    const ProjectionProblem problem = verification_instance(options, k);
    const OracleComparison cmp = compare_solvers(problem);
    ++summary.instances;
    summary.max_alpha_gap = std::max(summary.max_alpha_gap, cmp.alpha_gap);
    summary.max_x_gap = std::max(summary.max_x_gap, cmp.x_gap);
    summary.max_kkt_residual = std::max(summary.max_kkt_residual, cmp.fast_kkt_residual);
    if (cmp.alpha_gap > options.tolerance || cmp.x_gap > options.tolerance ||
        cmp.fast_kkt_residual > options.kkt_tolerance) {
      ++summary.failures;
      err << "verify: disagreement (alpha gap " << sci(cmp.alpha_gap) << ", x gap "
          << sci(cmp.x_gap) << ", kkt " << sci(cmp.fast_kkt_residual) << ")\n";
      describe_instance(err, options, k, problem);
    }
  }
  return summary;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, "verify", [&] {
    const VerifySummary s = run_verification(options, err);
    out << "instances: " << s.instances << "\n"
        << "max alpha gap: " << sci(s.max_alpha_gap) << "\n"
        << "max x gap: " << sci(s.max_x_gap) << "\n"
        << "max kkt residual: " << sci(s.max_kkt_residual) << "\n"
        << "failures: " << s.failures << "\n";
    return s.failures == 0 ? kSuccess : kVerificationFailed;
  });
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  if (options.n_list.empty()) throw InvalidInput("need at least one n");
  if (options.repeats == 0) throw InvalidInput("repeats must be >= 1");
  for (std::size_t n : options.n_list) {
    if (n == 0) throw InvalidInput("every n must be >= 1");
  }

  std::vector<BenchRow> rows;
  for (std::size_t n : options.n_list) {
    const ProjectionProblem problem = random_problem(options.seed + n, n, 1.0, 0.0);
    std::vector<double> seconds;
    for (std::size_t r = 0; r < options.repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const ProjectionSolution solution = solve_projection(problem);
      const auto stop = std::chrono::steady_clock::now();
      if (solution.x.size() != n) throw ContractViolation("bench: wrong solution size");
      seconds.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::sort(seconds.begin(), seconds.end());
    const std::size_t m = seconds.size();
    const double median = m % 2 ? seconds[m / 2] : 0.5 * (seconds[m / 2 - 1] + seconds[m / 2]);
    const double nlogn = static_cast<double>(n) * std::log2(static_cast<double>(n));
    rows.push_back({n, median,
                    n > 1 ? median / nlogn : std::numeric_limits<double>::quiet_NaN()});
  }
  return rows;
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, "bench", [&] {
    const std::vector<BenchRow> rows = run_bench(options);
    char line[128];
    std::snprintf(line, sizeof(line), "%12s %16s %20s\n", "n", "median_s", "s/(n*log2(n))");
    out << line;
    for (const BenchRow& row : rows) {
      std::snprintf(line, sizeof(line), "%12zu %16.6e %20.6e\n", row.n, row.median_seconds,
                    row.normalized);
      out << line;
    }
    return kSuccess;
  });
}

}  // namespace wl1proj::cli
