#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "wl1proj/problem.hpp"

namespace wl1proj {

/// Worst violations of the optimality conditions at a candidate (x, alpha).
struct KktReport {
  /// |x_i - y_i + d_i + alpha| over x_i > 0 and |x_i - y_i - d_i + alpha|
  /// over x_i < 0.
  double max_stationarity_residual = 0.0;
  /// max(0, |y_i - alpha| - d_i) over x_i == 0.
  double max_subgradient_violation = 0.0;
  /// |sum(x) - 1|.
  double feasibility_residual = 0.0;
  bool passed = false;

  double max_residual() const;
};

KktReport kkt_residual(const ProjectionProblem& problem, std::span<const double> x,
                       double alpha, double tolerance);

/// Root-finds phi by bisection on [min(y-) - 2, max(y+) + 2] and recovers x.
/// Independent of the merge scan.
ProjectionSolution bisection_solve(const ProjectionProblem& problem,
                                   std::size_t max_iterations = 200);

/// Tests all 4n + 1 candidate sets one by one, recomputing the sign pattern
/// and sums from scratch for each. O(n^2).
ProjectionSolution naive_enumeration_solve(const ProjectionProblem& problem);

struct RandomProblemOptions {
  std::uint64_t seed = 0;
  std::size_t n = 1;
  double value_scale = 1.0;
  double zero_weight_fraction = 0.0;
  /// Probability that an entry copies (y, d) from an earlier random entry.
  double duplicate_fraction = 0.0;
  /// When > 0, y and d are rounded to multiples of this step, which makes
  /// coincident breakpoints (including y-_i == y+_j) common.
  double grid_step = 0.0;
};

/// Deterministic random instance: y ~ U[-scale, scale], d ~ U[0, scale],
/// with round(fraction * n) weights forced to exactly zero.
ProjectionProblem random_problem(const RandomProblemOptions& options);
ProjectionProblem random_problem(std::uint64_t seed, std::size_t n, double value_scale,
                                 double zero_weight_fraction);

struct OracleComparison {
  double alpha_gap = 0.0;
  double x_gap = 0.0;
  std::map<std::string, double> per_solver_alpha;
  /// Worst KKT residual of the fast solver's output.
  double fast_kkt_residual = 0.0;
};

/// Runs the merge scan, the enumeration oracle and the bisection oracle and
/// reports the largest pairwise gaps.
OracleComparison compare_solvers(const ProjectionProblem& problem);

}  // namespace wl1proj
