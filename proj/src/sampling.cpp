#include "pathgroup/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pathgroup {

void MeasureSpec::validate() const {
  if (intervals < 1) throw std::invalid_argument("MeasureSpec: N must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("MeasureSpec: radius must be positive");
  if (dim < 2) throw std::invalid_argument("MeasureSpec: dim must be at least 2");
}

std::vector<double> sample_sphere_coordinates(SplitMix64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : x) {
      v = normal(rng);
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : x) v *= inv;
  return x;
}

std::vector<double> sample_ball_coordinates(SplitMix64& rng, int n, double radius) {
  auto x = sample_sphere_coordinates(rng, n);
  const double r = radius * std::pow(rng.uniform(), 1.0 / n);
  for (double& v : x) v *= r;
  return x;
}

StepPath sample_ball_point(const MeasureSpec& spec, std::uint64_t trial) {
  auto rng = make_stream(spec.seed, trial);
  const auto coords = sample_ball_coordinates(rng, spec.coordinate_count(), spec.radius);
  return StepPath::from_coordinates(spec.dim, spec.intervals, coords);
}

std::vector<StepPath> sample_ball(const MeasureSpec& spec, int count) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("sample_ball: count must be positive");
  std::vector<StepPath> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out.push_back(sample_ball_point(spec, static_cast<std::uint64_t>(k)));
  return out;
}

RadiusSchedule::RadiusSchedule(double alpha, double scale) : alpha_(alpha), scale_(scale) {
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("RadiusSchedule: alpha must lie in (1/2, 1)");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("RadiusSchedule: scale must be positive");
}

double RadiusSchedule::radius_for(int intervals) const {
  if (intervals < 1) throw std::invalid_argument("radius_for: N must be positive");
  return scale_ * std::pow(static_cast<double>(intervals), alpha_);
}

}  // namespace pathgroup
