#pragma once

// Step-function spaces V_N inside L^2([0,1], so(d)).

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "pathgroup/lie.hpp"

namespace pathgroup {

/// so(d)-valued step function on the uniform partition of [0,1) into N
/// half-open intervals [i/N, (i+1)/N).
class StepPath {
 public:
  StepPath() = default;

  /// Throws std::invalid_argument if `values` is empty or mixes dimensions.
  explicit StepPath(std::vector<AlgebraVector> values);

  static StepPath zero(int dim, int intervals);
  static StepPath constant(const AlgebraVector& value, int intervals);

  /// Inverse of coordinates(): entry k * d_k + j is sqrt(1/N) times the j-th
  /// basis coordinate of the value on interval k.
  static StepPath from_coordinates(int dim, int intervals, std::span<const double> coords);

  int intervals() const { return static_cast<int>(values_.size()); }
  int dim() const { return values_.empty() ? 0 : values_.front().dim(); }
  /// Real dimension of V_N, d_k * N.
  int coordinate_count() const { return algebra_dimension(dim()) * intervals(); }

  const std::vector<AlgebraVector>& values() const { return values_; }
  const AlgebraVector& operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

  /// Index of the interval containing t; t = 1 maps to the last interval.
  int interval_of(double t) const;
  const AlgebraVector& value_at(double t) const { return (*this)[interval_of(t)]; }

  /// Isometric coordinates in R^{d_k N}: the Euclidean dot product of two
  /// coordinate vectors equals l2_inner of the paths.
  std::vector<double> coordinates() const;
  void write_coordinates(std::span<double> out) const;

  StepPath& operator+=(const StepPath& other);
  StepPath& operator-=(const StepPath& other);
  StepPath& operator*=(double s);
  friend StepPath operator+(StepPath a, const StepPath& b) { return a += b; }
  friend StepPath operator-(StepPath a, const StepPath& b) { return a -= b; }
  friend StepPath operator*(double s, StepPath a) { return a *= s; }
  StepPath operator-() const { return -1.0 * *this; }

 private:
  std::vector<AlgebraVector> values_;
};

struct BallSpec {
  int intervals = 1;
  double radius = 1.0;

  /// Throws std::invalid_argument unless intervals >= 1 and radius > 0.
  void validate() const;
};

/// (1/N) sum_i tr(f_i^T g_i). Paths must share N and dim.
double l2_inner(const StepPath& f, const StepPath& g);
double l2_norm(const StepPath& f);

/// Embeds V_N into V_{mN} by repeating each value m times.
StepPath refine(const StepPath& f, int m);

/// Refines both paths to the least common multiple of their partitions.
std::pair<StepPath, StepPath> common_refinement(const StepPath& f, const StepPath& g);

/// min(||f - g||_2, 1).
double truncated_distance(const StepPath& f, const StepPath& g);

/// max_i ||g_i||_HS.
double sup_norm(const StepPath& g);

/// {"dim": d, "N": N, "coords": [...]} with coords in isometric coordinates.
nlohmann::json to_json(const StepPath& f);
StepPath step_path_from_json(const nlohmann::json& j);

}  // namespace pathgroup
