#pragma once

// Test-only reference computations, independent of the library code paths
// they are compared against.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;

/// Truncated power series sum_{k < terms} A^k / k!.
inline Matrix exp_series(const Matrix& a, int terms = 30) {
  Matrix sum = Matrix::Identity(a.rows(), a.cols());
  Matrix term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

/// exp via scaling the argument down by 2^s, series, and squaring back.
inline Matrix exp_series_scaled(const Matrix& a, int squarings = 8, int terms = 30) {
  Matrix r = exp_series(a / std::ldexp(1.0, squarings), terms);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

/// Left Riemann product prod_k exp(h F(kh)) over [0, 1] for a step function
/// given by its interval values, with h = 2^-log2_steps.
inline Matrix fine_grid_product(const std::vector<Matrix>& values, int log2_steps) {
  const long steps = 1L << log2_steps;
  const double h = 1.0 / static_cast<double>(steps);
  const auto n = static_cast<long>(values.size());
  Matrix r = Matrix::Identity(values.front().rows(), values.front().cols());
  for (long k = 0; k < steps; ++k) {
    const long interval = std::min(n - 1, (k * n) / steps);
    r = exp_series(h * values[static_cast<std::size_t>(interval)], 12) * r;
  }
  return r;
}

/// min over all permutations of (1/n) sum_i cost(i, sigma(i)).
inline double brute_force_assignment(const Matrix& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost(i, perm[static_cast<std::size_t>(i)]);
    best = std::min(best, total / n);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Kolmogorov-Smirnov statistic of a sample against Uniform(0, 1).
inline double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = std::clamp(xs[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - x, x - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace oracle
