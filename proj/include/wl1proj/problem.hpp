#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wl1proj {

/// Raised for malformed user input: length mismatch, non-finite entries,
/// negative weights, empty vectors.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a solver reaches a state that correct code cannot reach.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The pair (y, d) of
///
///   min_x  1/2 ||x - y||^2 + sum_i d_i |x_i|   s.t.  sum_i x_i = 1.
///
/// Construction validates: n >= 1, equal lengths, finite entries, d >= 0.
class ProjectionProblem {
 public:
  ProjectionProblem(std::vector<double> y, std::vector<double> d);

  /// Problem with the same weight on every coordinate.
  static ProjectionProblem uniform(std::vector<double> y, double weight);

  std::span<const double> y() const { return y_; }
  std::span<const double> d() const { return d_; }
  std::size_t size() const { return y_.size(); }

 private:
  std::vector<double> y_;
  std::vector<double> d_;
};

/// Shifted values y- = y - d and y+ = y + d, together with ascending copies.
/// The sorted copies are the two halves of the breakpoint sequence that the
/// merge scan walks.
struct BreakpointBounds {
  std::vector<double> y_minus;
  std::vector<double> y_plus;
  std::vector<double> sorted_minus;
  std::vector<double> sorted_plus;

  std::size_t size() const { return y_minus.size(); }
};

struct ProjectionSolution {
  std::vector<double> x;
  double alpha = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

struct SolverConfig {
  /// Slack allowed when testing whether a hypothesized multiplier lies in
  /// its candidate set. Zero means an exact closed-interval test.
  double membership_tolerance = 0.0;
  /// Allowed |sum(x) - 1| before the solver reports a contract violation.
  double feasibility_tolerance = 1e-9;

  void validate() const;
};

/// Throws InvalidInput unless every entry is finite.
void require_finite(std::span<const double> values, const std::string& what);

}  // namespace wl1proj
