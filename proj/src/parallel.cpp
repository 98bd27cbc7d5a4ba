#include "pathgroup/parallel.hpp"

#include <stdexcept>

#include <omp.h>

namespace pathgroup::parallel {

int default_threads() { return omp_get_max_threads(); }

std::vector<StepPath> sample_ball(const MeasureSpec& spec, int count, int threads) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("sample_ball: count must be positive");
  return map_trials(count, threads,
                    [&](int k) { return sample_ball_point(spec, static_cast<std::uint64_t>(k)); });
}

Matrix cost_matrix(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int threads) {
  if (a.intervals() != b.intervals() || a.dim() != b.dim()) {
    throw std::invalid_argument("cost_matrix: measures live on different spaces");
  }
  const int rows = a.size();
  const int cols = b.size();
  Matrix cost(rows, cols);
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1)
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) cost(i, j) = truncated_distance(a[i], b[j]);
  }
  return cost;
}

TransportReport mk_exact(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int threads) {
  if (a.size() != b.size()) throw std::invalid_argument("mk_exact: measures must have equal size");
  if (a.size() > kExactSolverCap) throw std::invalid_argument("mk_exact: n exceeds the exact cap");
  return pathgroup::mk_exact(cost_matrix(a, b, threads));
}

double escape_fraction(const MeasureSpec& spec, const StepPath& g, int count, int threads) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("escape_fraction: count must be positive");
  if (g.intervals() != spec.intervals || g.dim() != spec.dim) {
    throw std::invalid_argument("escape_fraction: g does not live on V_N of the measure");
  }
  const auto escaped = map_trials(count, threads, [&](int k) -> int {
    const StepPath f = sample_ball_point(spec, static_cast<std::uint64_t>(k));
    return l2_norm(star_phi(f, g)) > spec.radius ? 1 : 0;
  });
  int total = 0;
  for (int e : escaped) total += e;
  return static_cast<double>(total) / count;
}

}  // namespace pathgroup::parallel
