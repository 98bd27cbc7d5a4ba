#pragma once

// Uniform measures nu_{N,R} on balls R B_N and the radius schedules R_N = c N^alpha.

#include <cstdint>
#include <vector>

#include "pathgroup/path_space.hpp"
#include "pathgroup/rng.hpp"

namespace pathgroup {

struct MeasureSpec {
  int intervals = 1;
  double radius = 1.0;
  int dim = 3;
  std::uint64_t seed = 0;

  void validate() const;
  /// d_k * N.
  int coordinate_count() const { return algebra_dimension(dim) * intervals; }
};

/// Draws one point uniformly from the Euclidean ball of radius R in the
/// isometric coordinates of V_N: Gaussian direction, radius R u^{1/(d_k N)}.
StepPath sample_ball_point(const MeasureSpec& spec, std::uint64_t trial);

/// Trials 0..count-1, serially.
std::vector<StepPath> sample_ball(const MeasureSpec& spec, int count);

/// Uniform point of the radius-`radius` ball in R^n.
std::vector<double> sample_ball_coordinates(SplitMix64& rng, int n, double radius);
/// Uniform point of the unit sphere in R^n.
std::vector<double> sample_sphere_coordinates(SplitMix64& rng, int n);

class RadiusSchedule {
 public:
  /// Throws std::invalid_argument unless 1/2 < alpha < 1 and scale > 0.
  explicit RadiusSchedule(double alpha = 0.75, double scale = 1.0);

  double alpha() const { return alpha_; }
  double scale() const { return scale_; }

  /// c N^alpha.
  double radius_for(int intervals) const;

 private:
  double alpha_;
  double scale_;
};

inline double radius_for(const RadiusSchedule& schedule, int intervals) {
  return schedule.radius_for(intervals);
}

}  // namespace pathgroup
