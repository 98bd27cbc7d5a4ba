#include "pathgroup/harness/jacobian.hpp"

#include <cmath>
#include <stdexcept>

namespace pathgroup::harness {

Matrix numerical_jacobian(const PathMap& map, const StepPath& point, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("numerical_jacobian: step must be positive");
  const int n = point.coordinate_count();
  if (n > kJacobianCoordinateCap) {
    throw std::invalid_argument("numerical_jacobian: " + std::to_string(n) +
                                " coordinates exceed the dense cap of " +
                                std::to_string(kJacobianCoordinateCap));
  }
  const int dim = point.dim();
  const int intervals = point.intervals();
  std::vector<double> x = point.coordinates();
  Matrix jac(n, n);
  for (int j = 0; j < n; ++j) {
    const double saved = x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(j)] = saved + h;
    const auto plus = map(StepPath::from_coordinates(dim, intervals, x)).coordinates();
    x[static_cast<std::size_t>(j)] = saved - h;
    const auto minus = map(StepPath::from_coordinates(dim, intervals, x)).coordinates();
    x[static_cast<std::size_t>(j)] = saved;
    if (static_cast<int>(plus.size()) != n || static_cast<int>(minus.size()) != n) {
      throw std::invalid_argument("numerical_jacobian: map leaves V_N");
    }
    for (int i = 0; i < n; ++i) {
      jac(i, j) = (plus[static_cast<std::size_t>(i)] - minus[static_cast<std::size_t>(i)]) / (2.0 * h);
    }
  }
  return jac;
}

double numerical_jacobian_det(const PathMap& map, const StepPath& point, double h) {
  return numerical_jacobian(map, point, h).partialPivLu().determinant();
}

JacobianReport jacobian_report(const std::string& map_tag, const PathMap& map,
                               const StepPath& point, double h) {
  JacobianReport report;
  report.map_tag = map_tag;
  report.base_point = point.coordinates();
  report.step = h;
  report.determinant = numerical_jacobian_det(map, point, h);
  report.deviation = map_tag == "inverse" ? std::abs(std::abs(report.determinant) - 1.0)
                                          : std::abs(report.determinant - 1.0);
  return report;
}

}  // namespace pathgroup::harness
