#include "wl1proj/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace wl1proj {

BreakpointBounds shifted_bounds(const ProjectionProblem& problem) {
  const auto y = problem.y();
  const auto d = problem.d();
  const std::size_t n = problem.size();

  BreakpointBounds bounds;
  bounds.y_minus.resize(n);
  bounds.y_plus.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    bounds.y_minus[i] = y[i] - d[i];
    bounds.y_plus[i] = y[i] + d[i];
  }
  bounds.sorted_minus = bounds.y_minus;
  bounds.sorted_plus = bounds.y_plus;
  std::sort(bounds.sorted_minus.begin(), bounds.sorted_minus.end());
  std::sort(bounds.sorted_plus.begin(), bounds.sorted_plus.end());
  return bounds;
}

double phi(double alpha, const BreakpointBounds& bounds) {
  if (!std::isfinite(alpha)) {
    throw InvalidInput("phi: alpha must be finite");
  }
  double value = -1.0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds.y_minus[i] > alpha) {
      value += bounds.y_minus[i] - alpha;
    } else if (bounds.y_plus[i] < alpha) {
      value += bounds.y_plus[i] - alpha;
    }
  }
  return value;
}

double hypothesized_alpha(double sum_pos_minus, double sum_neg_plus, std::size_t t) {
  if (t == 0) {
    throw InvalidInput("hypothesized_alpha: no active dimensions");
  }
  return (sum_pos_minus + sum_neg_plus - 1.0) / static_cast<double>(t);
}

std::vector<double> recover_x(const BreakpointBounds& bounds, double alpha) {
  if (!std::isfinite(alpha)) {
    throw InvalidInput("recover_x: alpha must be finite");
  }
  std::vector<double> x(bounds.size(), 0.0);
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds.y_minus[i] > alpha) {
      x[i] = bounds.y_minus[i] - alpha;
    } else if (bounds.y_plus[i] < alpha) {
      x[i] = bounds.y_plus[i] - alpha;
    }
  }
  return x;
}

ProjectionSolution make_solution(std::vector<double> x, double alpha) {
  ProjectionSolution solution;
  for (double v : x) {
    if (v > 0.0) {
      ++solution.n_pos;
    } else if (v < 0.0) {
      ++solution.n_neg;
    }
  }
  solution.x = std::move(x);
  solution.alpha = alpha;
  return solution;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Running state of the merge scan. minus_sum holds the y- values strictly
// above the current set, plus_sum the y+ values strictly below it, active the
// number of coordinates counted in either sum.
struct ScanState {
  double minus_sum = 0.0;
  double plus_sum = 0.0;
  std::size_t active = 0;
};

// Tests the candidate set [left, right] (a point when left == right).
//
// Sets are visited in ascending order and every earlier set rejected its
// multiplier as lying to the right of it, so phi(left) > 0. A multiplier
// landing slightly left of `left` therefore only happens through rounding
// when the root sits on `left` itself; it is snapped there as long as the
// miss is within the accumulated rounding error of the running sums.
std::optional<double> test_set(const ScanState& state, double left, double right,
                               double tolerance, double abs_mass) {
  if (state.active == 0) {
    // phi == -1 on this set, so the root is at or left of `left`.
    if (std::isfinite(left)) {
      return left;
    }
    throw ContractViolation("solve_projection: empty active set at -inf");
  }
  const double alpha = hypothesized_alpha(state.minus_sum, state.plus_sum, state.active);
  if (alpha > right + tolerance) {
    return std::nullopt;
  }
  if (alpha >= left - tolerance) {
    return alpha;
  }
  const double slack =
      tolerance + 16.0 * kEps * (abs_mass + 1.0) / static_cast<double>(state.active) +
      4.0 * kEps * std::abs(left);
  if (alpha >= left - slack) {
    return left;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "solve_projection: multiplier " << alpha << " fell below set [" << left << ", "
      << right << "] after all earlier sets were rejected";
  throw ContractViolation(msg.str());
}

double locate_alpha(const BreakpointBounds& bounds, double tolerance) {
  const auto& minus = bounds.sorted_minus;
  const auto& plus = bounds.sorted_plus;
  const std::size_t n = bounds.size();

  ScanState state;
  double abs_mass = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    state.minus_sum += minus[k];
    abs_mass += std::abs(minus[k]) + std::abs(plus[k]);
  }
  state.active = n;

  // (-inf, z_1): every coordinate positive. min(y-) <= min(y+), so z_1 = minus[0].
  if (auto alpha = test_set(state, -kInf, minus[0], tolerance, abs_mass)) {
    return *alpha;
  }

  std::size_t i = 0;  // next unmerged index into minus
  std::size_t j = 0;  // next unmerged index into plus
  auto next_breakpoint = [&] {
    const double a = i < n ? minus[i] : kInf;
    const double b = j < n ? plus[j] : kInf;
    return std::min(a, b);
  };

  while (i < n || j < n) {
    const double z = next_breakpoint();

    // Point set {z}: coordinates with y- == z leave the positive set, those
    // with y+ == z are not yet negative.
    while (i < n && minus[i] == z) {
      state.minus_sum -= minus[i];
      --state.active;
      ++i;
    }
    if (i == n) {
      state.minus_sum = 0.0;
    }
    if (auto alpha = test_set(state, z, z, tolerance, abs_mass)) {
      return *alpha;
    }

    // Open interval to the right of z: y+ == z is now strictly below.
    while (j < n && plus[j] == z) {
      state.plus_sum += plus[j];
      ++state.active;
      ++j;
    }
    if (auto alpha = test_set(state, z, next_breakpoint(), tolerance, abs_mass)) {
      return *alpha;
    }
  }
  throw ContractViolation("solve_projection: no candidate set contains the multiplier");
}

}  // namespace

ProjectionSolution solve_projection(const ProjectionProblem& problem,
                                    const SolverConfig& config) {
  config.validate();
  const BreakpointBounds bounds = shifted_bounds(problem);
  const double alpha = locate_alpha(bounds, config.membership_tolerance);
  ProjectionSolution solution = make_solution(recover_x(bounds, alpha), alpha);

  double sum = 0.0;
  double mass = 0.0;
  for (double v : solution.x) {
    sum += v;
    mass += std::abs(v);
  }
  mass += static_cast<double>(solution.n_pos + solution.n_neg) * std::abs(alpha);
  if (std::abs(sum - 1.0) > config.feasibility_tolerance * std::max(1.0, mass)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "solve_projection: recovered x sums to " << sum;
    throw ContractViolation(msg.str());
  }
  return solution;
}

}  // namespace wl1proj
