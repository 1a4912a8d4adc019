#include "wl1proj/problem.hpp"

#include <cmath>

namespace wl1proj {

void require_finite(std::span<const double> values, const std::string& what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidInput(what + "[" + std::to_string(i) + "] is not finite");
    }
  }
}

ProjectionProblem::ProjectionProblem(std::vector<double> y, std::vector<double> d)
    : y_(std::move(y)), d_(std::move(d)) {
  if (y_.empty()) {
    throw InvalidInput("projection problem needs at least one dimension");
  }
  if (y_.size() != d_.size()) {
    throw InvalidInput("length mismatch: y has " + std::to_string(y_.size()) +
                       " entries, d has " + std::to_string(d_.size()));
  }
  require_finite(y_, "y");
  require_finite(d_, "d");
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i] < 0.0) {
      throw InvalidInput("d[" + std::to_string(i) + "] is negative");
    }
  }
}

ProjectionProblem ProjectionProblem::uniform(std::vector<double> y, double weight) {
  std::vector<double> d(y.size(), weight);
  return ProjectionProblem(std::move(y), std::move(d));
}

void SolverConfig::validate() const {
  if (!std::isfinite(membership_tolerance) || membership_tolerance < 0.0) {
    throw InvalidInput("membership_tolerance must be finite and >= 0");
  }
  if (!std::isfinite(feasibility_tolerance) || feasibility_tolerance < 0.0) {
    throw InvalidInput("feasibility_tolerance must be finite and >= 0");
  }
}

}  // namespace wl1proj
