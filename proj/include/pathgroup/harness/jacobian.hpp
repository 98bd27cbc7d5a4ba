#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pathgroup/path_space.hpp"

namespace pathgroup::harness {

using PathMap = std::function<StepPath(const StepPath&)>;

inline constexpr int kJacobianCoordinateCap = 64;

/// Determinant of the central-difference Jacobian of `map` at `point`, taken
/// in the isometric coordinates of V_N. Throws std::invalid_argument if
/// d_k N exceeds kJacobianCoordinateCap or h <= 0.
double numerical_jacobian_det(const PathMap& map, const StepPath& point, double h);

/// The full central-difference Jacobian, column j = d map / d x_j.
Matrix numerical_jacobian(const PathMap& map, const StepPath& point, double h);

struct JacobianReport {
  std::string map_tag;  // "inverse" or "phi"
  std::vector<double> base_point;
  double step = 0.0;
  double determinant = 0.0;
  /// | |det| - 1 | for "inverse", |det - 1| for "phi".
  double deviation = 0.0;
};

JacobianReport jacobian_report(const std::string& map_tag, const PathMap& map,
                               const StepPath& point, double h);

}  // namespace pathgroup::harness
