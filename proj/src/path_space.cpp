#include "pathgroup/path_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pathgroup {

namespace {

void require_compatible(const StepPath& f, const StepPath& g, const char* what) {
  if (f.dim() != g.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
  if (f.intervals() != g.intervals()) {
    throw std::invalid_argument(std::string(what) + ": partition mismatch (N = " +
                                std::to_string(f.intervals()) + " vs " +
                                std::to_string(g.intervals()) + "), refine first");
  }
}

}  // namespace

StepPath::StepPath(std::vector<AlgebraVector> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("StepPath: at least one interval required");
  const int d = values_.front().dim();
  for (const auto& v : values_) {
    if (v.dim() != d) throw std::invalid_argument("StepPath: values have mixed dimensions");
  }
}

StepPath StepPath::zero(int dim, int intervals) {
  if (intervals < 1) throw std::invalid_argument("StepPath::zero: N must be positive");
  return StepPath(std::vector<AlgebraVector>(static_cast<std::size_t>(intervals),
                                             AlgebraVector::zero(dim)));
}

StepPath StepPath::constant(const AlgebraVector& value, int intervals) {
  if (intervals < 1) throw std::invalid_argument("StepPath::constant: N must be positive");
  return StepPath(std::vector<AlgebraVector>(static_cast<std::size_t>(intervals), value));
}

StepPath StepPath::from_coordinates(int dim, int intervals, std::span<const double> coords) {
  const int dk = algebra_dimension(dim);
  if (intervals < 1) throw std::invalid_argument("StepPath::from_coordinates: N must be positive");
  if (static_cast<long>(coords.size()) != static_cast<long>(dk) * intervals) {
    throw std::invalid_argument("StepPath::from_coordinates: expected " +
                                std::to_string(dk * intervals) + " coordinates, got " +
                                std::to_string(coords.size()));
  }
  const double scale = std::sqrt(static_cast<double>(intervals));
  std::vector<double> buf(static_cast<std::size_t>(dk));
  std::vector<AlgebraVector> values;
  values.reserve(static_cast<std::size_t>(intervals));
  for (int i = 0; i < intervals; ++i) {
    for (int j = 0; j < dk; ++j) {
      buf[static_cast<std::size_t>(j)] = scale * coords[static_cast<std::size_t>(i * dk + j)];
    }
    values.push_back(AlgebraVector::from_coordinates(dim, buf));
  }
  return StepPath(std::move(values));
}

int StepPath::interval_of(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::out_of_range("StepPath: t = " + std::to_string(t) + " outside [0, 1]");
  }
  const int n = intervals();
  const int i = static_cast<int>(std::floor(t * n));
  return std::min(i, n - 1);
}

std::vector<double> StepPath::coordinates() const {
  std::vector<double> out(static_cast<std::size_t>(coordinate_count()));
  write_coordinates(out);
  return out;
}

void StepPath::write_coordinates(std::span<double> out) const {
  const int dk = algebra_dimension(dim());
  const double scale = 1.0 / std::sqrt(static_cast<double>(intervals()));
  for (int i = 0; i < intervals(); ++i) {
    auto block = out.subspan(static_cast<std::size_t>(i * dk), static_cast<std::size_t>(dk));
    (*this)[i].write_coordinates(block);
    for (double& c : block) c *= scale;
  }
}

StepPath& StepPath::operator+=(const StepPath& other) {
  require_compatible(*this, other, "StepPath::operator+");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

StepPath& StepPath::operator-=(const StepPath& other) {
  require_compatible(*this, other, "StepPath::operator-");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

StepPath& StepPath::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

void BallSpec::validate() const {
  if (intervals < 1) throw std::invalid_argument("BallSpec: N must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("BallSpec: radius must be positive");
}

double l2_inner(const StepPath& f, const StepPath& g) {
  require_compatible(f, g, "l2_inner");
  double sum = 0.0;
  for (int i = 0; i < f.intervals(); ++i) sum += hs_inner(f[i], g[i]);
  return sum / f.intervals();
}

double l2_norm(const StepPath& f) { return std::sqrt(l2_inner(f, f)); }

StepPath refine(const StepPath& f, int m) {
  if (m < 1) throw std::invalid_argument("refine: multiple must be positive");
  if (m == 1) return f;
  std::vector<AlgebraVector> values;
  values.reserve(static_cast<std::size_t>(f.intervals()) * static_cast<std::size_t>(m));
  for (const auto& v : f.values()) {
    for (int k = 0; k < m; ++k) values.push_back(v);
  }
  return StepPath(std::move(values));
}

std::pair<StepPath, StepPath> common_refinement(const StepPath& f, const StepPath& g) {
  const int l = std::lcm(f.intervals(), g.intervals());
  return {refine(f, l / f.intervals()), refine(g, l / g.intervals())};
}

double truncated_distance(const StepPath& f, const StepPath& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("truncated_distance: dimension mismatch");
  require_compatible(f, g, "truncated_distance");
  double sum = 0.0;
  for (int i = 0; i < f.intervals(); ++i) sum += (f[i].matrix() - g[i].matrix()).squaredNorm();
  return std::min(std::sqrt(sum / f.intervals()), 1.0);
}

double sup_norm(const StepPath& g) {
  double best = 0.0;
  for (const auto& v : g.values()) best = std::max(best, hs_norm(v));
  return best;
}

nlohmann::json to_json(const StepPath& f) {
  return {{"dim", f.dim()}, {"N", f.intervals()}, {"coords", f.coordinates()}};
}

StepPath step_path_from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  const int n = j.at("N").get<int>();
  const auto coords = j.at("coords").get<std::vector<double>>();
  return StepPath::from_coordinates(dim, n, coords);
}

}  // namespace pathgroup
