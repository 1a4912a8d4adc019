#include "wl1proj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "wl1proj/projection.hpp"

namespace wl1proj {

double KktReport::max_residual() const {
  return std::max({max_stationarity_residual, max_subgradient_violation,
                   feasibility_residual});
}

KktReport kkt_residual(const ProjectionProblem& problem, std::span<const double> x,
                       double alpha, double tolerance) {
  if (x.size() != problem.size()) {
    throw InvalidInput("kkt_residual: x has " + std::to_string(x.size()) +
                       " entries, problem has " + std::to_string(problem.size()));
  }
  if (!(tolerance >= 0.0)) {
    throw InvalidInput("kkt_residual: tolerance must be >= 0");
  }
  const auto y = problem.y();
  const auto d = problem.d();

  KktReport report;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i];
    if (x[i] > 0.0) {
      report.max_stationarity_residual =
          std::max(report.max_stationarity_residual, std::abs(x[i] - y[i] + d[i] + alpha));
    } else if (x[i] < 0.0) {
      report.max_stationarity_residual =
          std::max(report.max_stationarity_residual, std::abs(x[i] - y[i] - d[i] + alpha));
    } else {
      report.max_subgradient_violation = std::max(
          report.max_subgradient_violation, std::max(0.0, std::abs(y[i] - alpha) - d[i]));
    }
  }
  report.feasibility_residual = std::abs(sum - 1.0);
  report.passed = report.max_residual() <= tolerance;
  return report;
}

ProjectionSolution bisection_solve(const ProjectionProblem& problem,
                                   std::size_t max_iterations) {
  if (max_iterations == 0) {
    throw InvalidInput("bisection_solve: max_iterations must be >= 1");
  }
  const BreakpointBounds bounds = shifted_bounds(problem);
  double lo = *std::min_element(bounds.y_minus.begin(), bounds.y_minus.end()) - 2.0;
  double hi = *std::max_element(bounds.y_plus.begin(), bounds.y_plus.end()) + 2.0;
  if (!(phi(lo, bounds) > 0.0) || !(phi(hi, bounds) < 0.0)) {
    throw ContractViolation("bisection_solve: phi does not change sign on the bracket");
  }

  for (std::size_t it = 0; it < max_iterations; ++it) {
    if (hi - lo < 1e-13 * (1.0 + std::max(std::abs(lo), std::abs(hi)))) {
      break;
    }
    const double mid = 0.5 * (lo + hi);
    if (phi(mid, bounds) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double alpha = 0.5 * (lo + hi);

  // The root is often a kink of phi; land on it exactly when it is close.
  double nearest = alpha;
  double nearest_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    for (double z : {bounds.y_minus[i], bounds.y_plus[i]}) {
      if (std::abs(z - alpha) < nearest_dist) {
        nearest_dist = std::abs(z - alpha);
        nearest = z;
      }
    }
  }
  if (nearest_dist <= 1e-12 && std::abs(phi(nearest, bounds)) < std::abs(phi(alpha, bounds))) {
    alpha = nearest;
  }
  return make_solution(recover_x(bounds, alpha), alpha);
}

namespace {

// One of the 4n + 1 sets partitioning the real line. A point set has
// left == right.
struct CandidateSet {
  double left;
  double right;
};

struct Hypothesis {
  double alpha;
  double violation;  // distance from alpha to the set, 0 when inside
};

std::optional<Hypothesis> hypothesize(const BreakpointBounds& bounds, CandidateSet set) {
  const bool is_point = set.left == set.right;
  double sum_pos = 0.0;
  double sum_neg = 0.0;
  std::size_t t = 0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    // For an open interval (a, b): y- > alpha throughout iff y- >= b, and
    // y+ < alpha throughout iff y+ <= a.
    const bool positive = is_point ? bounds.y_minus[i] > set.left : bounds.y_minus[i] >= set.right;
    const bool negative = is_point ? bounds.y_plus[i] < set.left : bounds.y_plus[i] <= set.left;
    if (positive) {
      sum_pos += bounds.y_minus[i];
      ++t;
    } else if (negative) {
      sum_neg += bounds.y_plus[i];
      ++t;
    }
  }
  if (t == 0) {
    return std::nullopt;
  }
  const double alpha = hypothesized_alpha(sum_pos, sum_neg, t);
  double violation = 0.0;
  if (alpha < set.left) {
    violation = set.left - alpha;
  } else if (alpha > set.right) {
    violation = alpha - set.right;
  }
  return Hypothesis{alpha, violation};
}

}  // namespace

ProjectionSolution naive_enumeration_solve(const ProjectionProblem& problem) {
  const BreakpointBounds bounds = shifted_bounds(problem);
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<double> z(bounds.y_minus);
  z.insert(z.end(), bounds.y_plus.begin(), bounds.y_plus.end());
  std::sort(z.begin(), z.end());
  // Repeated breakpoints only contribute empty intervals and repeated points.
  z.erase(std::unique(z.begin(), z.end()), z.end());

  std::vector<CandidateSet> sets;
  sets.push_back({-inf, z.front()});
  for (std::size_t k = 0; k < z.size(); ++k) {
    sets.push_back({z[k], z[k]});
    sets.push_back({z[k], k + 1 < z.size() ? z[k + 1] : inf});
  }

  std::optional<Hypothesis> best;
  CandidateSet best_set{};
  for (const CandidateSet& set : sets) {
    auto h = hypothesize(bounds, set);
    if (!h) {
      continue;
    }
    if (h->violation == 0.0) {
      return make_solution(recover_x(bounds, h->alpha), h->alpha);
    }
    if (!best || h->violation < best->violation) {
      best = h;
      best_set = set;
    }
  }

  // No set holds its hypothesis exactly: the root sits on a breakpoint and
  // rounding pushed every hypothesis just outside. Accept the closest miss if
  // it is within rounding error of the data.
  double mass = 0.0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    mass += std::abs(bounds.y_minus[i]) + std::abs(bounds.y_plus[i]);
  }
  const double slack = 16.0 * std::numeric_limits<double>::epsilon() * (mass + 1.0);
  if (best && best->violation <= slack) {
    const double alpha = std::clamp(best->alpha, best_set.left, best_set.right);
    return make_solution(recover_x(bounds, alpha), alpha);
  }
  throw ContractViolation("naive_enumeration_solve: no candidate set contains its multiplier");
}

ProjectionProblem random_problem(const RandomProblemOptions& options) {
  if (options.n == 0) {
    throw InvalidInput("random_problem: n must be >= 1");
  }
  if (!std::isfinite(options.value_scale) || options.value_scale <= 0.0) {
    throw InvalidInput("random_problem: value_scale must be finite and > 0");
  }
  if (!(options.zero_weight_fraction >= 0.0 && options.zero_weight_fraction <= 1.0)) {
    throw InvalidInput("random_problem: zero_weight_fraction must lie in [0, 1]");
  }
  if (!(options.duplicate_fraction >= 0.0 && options.duplicate_fraction <= 1.0)) {
    throw InvalidInput("random_problem: duplicate_fraction must lie in [0, 1]");
  }
  if (!std::isfinite(options.grid_step) || options.grid_step < 0.0) {
    throw InvalidInput("random_problem: grid_step must be finite and >= 0");
  }

  const std::size_t n = options.n;
  const double scale = options.value_scale;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> value_dist(-scale, scale);
  std::uniform_real_distribution<double> weight_dist(0.0, scale);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> y(n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = value_dist(rng);
    d[i] = weight_dist(rng);
  }
  if (options.grid_step > 0.0) {
    const double step = options.grid_step;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = std::round(y[i] / step) * step;
      d[i] = std::round(d[i] / step) * step;
    }
  }
  if (options.duplicate_fraction > 0.0) {
    for (std::size_t i = 1; i < n; ++i) {
      if (unit(rng) < options.duplicate_fraction) {
        const std::size_t src = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        y[i] = y[src];
        d[i] = d[src];
      }
    }
  }
  const auto zero_count = static_cast<std::size_t>(
      std::llround(options.zero_weight_fraction * static_cast<double>(n)));
  if (zero_count > 0) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < zero_count; ++k) {
      d[order[k]] = 0.0;
    }
  }
  return ProjectionProblem(std::move(y), std::move(d));
}

ProjectionProblem random_problem(std::uint64_t seed, std::size_t n, double value_scale,
                                 double zero_weight_fraction) {
  RandomProblemOptions options;
  options.seed = seed;
  options.n = n;
  options.value_scale = value_scale;
  options.zero_weight_fraction = zero_weight_fraction;
  return random_problem(options);
}

OracleComparison compare_solvers(const ProjectionProblem& problem) {
  const ProjectionSolution fast = solve_projection(problem);
  const ProjectionSolution naive = naive_enumeration_solve(problem);
  const ProjectionSolution bisect = bisection_solve(problem);

  const std::pair<const char*, const ProjectionSolution*> solvers[] = {
      {"merge_scan", &fast}, {"enumeration", &naive}, {"bisection", &bisect}};

  OracleComparison out;
  for (std::size_t a = 0; a < std::size(solvers); ++a) {
    out.per_solver_alpha[solvers[a].first] = solvers[a].second->alpha;
    for (std::size_t b = a + 1; b < std::size(solvers); ++b) {
      const auto& xa = solvers[a].second->x;
      const auto& xb = solvers[b].second->x;
      out.alpha_gap = std::max(out.alpha_gap,
                               std::abs(solvers[a].second->alpha - solvers[b].second->alpha));
      for (std::size_t i = 0; i < xa.size(); ++i) {
        out.x_gap = std::max(out.x_gap, std::abs(xa[i] - xb[i]));
      }
    }
  }
  out.fast_kkt_residual = kkt_residual(problem, fast.x, fast.alpha, 0.0).max_residual();
  return out;
}

}  // namespace wl1proj
