#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wl1proj/problem.hpp"

namespace wl1proj {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  static Matrix zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Local coordinate coding of a sample u over landmarks (columns of V):
///
///   min_w ||u - V w||^2 + lambda * sum_j ||u - v_j||^2 |w_j|   s.t. sum_j w_j = 1.
class LccProblem {
 public:
  LccProblem(std::vector<double> u, Matrix landmarks, double lambda);

  std::span<const double> u() const { return u_; }
  const Matrix& landmarks() const { return landmarks_; }
  double lambda() const { return lambda_; }
  std::size_t dimension() const { return u_.size(); }
  std::size_t num_landmarks() const { return landmarks_.cols(); }

 private:
  std::vector<double> u_;
  Matrix landmarks_;
  double lambda_;
};

struct FistaConfig {
  std::size_t max_iterations = 10000;
  double fixed_point_tolerance = 1e-8;
  /// Overrides 1 / lipschitz_upper_bound when set.
  std::optional<double> step_size;

  void validate() const;
};

struct LccSolution {
  std::vector<double> w;
  double objective = 0.0;
  std::size_t iterations_used = 0;
  bool converged = false;
  /// Best objective seen so far, one entry per iterate (starting with w_0).
  std::vector<double> best_objective_trace;
};

/// d_j = lambda * ||u - v_j||^2.
std::vector<double> locality_weights(const LccProblem& problem);

double lcc_objective(std::span<const double> w, const LccProblem& problem);

/// Gradient of ||u - V w||^2, i.e. 2 V^T (V w - u).
std::vector<double> smooth_gradient(std::span<const double> w, const LccProblem& problem);

/// 2 * sigma_max(V)^2 from power iteration on V^T V, inflated by 1%.
/// Returns 1e-12 for a zero matrix.
double lipschitz_upper_bound(const LccProblem& problem);

/// argmin_x 1/2 ||x - z||^2 + step * sum_j d_j |x_j|  s.t.  sum_j x_j = 1.
std::vector<double> prox_step(std::span<const double> z, std::span<const double> d,
                              double step);

/// || w - prox(w - step * grad(w)) ||_inf, zero exactly at a minimizer.
double fixed_point_residual(std::span<const double> w, const LccProblem& problem,
                            std::span<const double> d, double step);

/// Accelerated proximal gradient from the uniform point (1/C) * 1.
LccSolution solve_lcc(const LccProblem& problem, const FistaConfig& config = {});

}  // namespace wl1proj
