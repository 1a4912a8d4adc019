#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wl1proj/problem.hpp"

namespace wl1proj {

/// Computes y - d, y + d and their ascending copies. The two sorts are the
/// only superlinear work in a projection.
BreakpointBounds shifted_bounds(const ProjectionProblem& problem);

/// Dual residual
///
///   phi(a) = sum_{y-_i > a} (y-_i - a) + sum_{y+_i < a} (y+_i - a) - 1.
///
/// Continuous, piecewise linear and nonincreasing; its unique root is the
/// multiplier of the sum constraint.
double phi(double alpha, const BreakpointBounds& bounds);

/// Multiplier implied by a conjectured sign pattern:
/// (sum of y- over positive coords + sum of y+ over negative coords - 1) / t,
/// with t the number of nonzero coords. Throws InvalidInput for t == 0.
double hypothesized_alpha(double sum_pos_minus, double sum_neg_plus, std::size_t t);

/// Primal point for a given multiplier: y-_i - a where y-_i > a,
/// y+_i - a where y+_i < a, and 0 otherwise.
std::vector<double> recover_x(const BreakpointBounds& bounds, double alpha);

/// Fills n_pos / n_neg from x.
ProjectionSolution make_solution(std::vector<double> x, double alpha);

/// Exact projection by a single merged scan over the sorted breakpoints.
///
/// The real line is split into the 2n breakpoints and the 2n + 1 open
/// intervals around them. The scan visits these sets in ascending order,
/// keeping the sum of y- above the set, the sum of y+ below it and the
/// count of nonzero coordinates, and stops at the first set containing its
/// own hypothesized multiplier. Equal breakpoints are consumed as one block.
ProjectionSolution solve_projection(const ProjectionProblem& problem,
                                    const SolverConfig& config = {});

}  // namespace wl1proj
