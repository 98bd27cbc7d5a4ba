#include "pathgroup/path_group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pathgroup {

namespace {

void require_same_partition(const StepPath& f, const StepPath& g, const char* what) {
  if (f.dim() != g.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  if (f.intervals() != g.intervals()) {
    throw std::invalid_argument(std::string(what) + ": partition mismatch");
  }
}

}  // namespace

PartialProductTable::PartialProductTable(const StepPath& f) {
  const int n = f.intervals();
  const double h = 1.0 / n;
  products_.reserve(static_cast<std::size_t>(n) + 1);
  products_.push_back(GroupMatrix::identity(f.dim()));
  for (int i = 0; i < n; ++i) products_.push_back(exp_matrix(h * f[i]) * products_.back());
}

const GroupMatrix& PartialProductTable::rho(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("rho: t outside [0, 1]");
  const int n = intervals();
  const int i = std::min(static_cast<int>(std::floor(t * n)), n - 1);
  return (*this)[i];
}

PartialProductTable partial_products(const StepPath& f) { return PartialProductTable(f); }

GroupMatrix product_integral(const StepPath& f, const PartialProductTable& table, double t) {
  const int j = f.interval_of(t);
  const double offset = t - static_cast<double>(j) / f.intervals();
  return exp_matrix(offset * f[j]) * table[j];
}

GroupMatrix product_integral(const StepPath& f, double t) {
  const int j = f.interval_of(t);
  const double h = 1.0 / f.intervals();
  GroupMatrix r = GroupMatrix::identity(f.dim());
  for (int i = 0; i < j; ++i) r = exp_matrix(h * f[i]) * r;
  return exp_matrix((t - j * h) * f[j]) * r;
}

StarResultEvaluator::StarResultEvaluator(PathHandle lhs, PathHandle rhs)
    : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  if (!lhs_ || !rhs_) throw std::invalid_argument("star: null operand");
  if (lhs_->dim() != rhs_->dim()) throw std::invalid_argument("star: dimension mismatch");
}

AlgebraVector StarResultEvaluator::value(double t) const {
  return lhs_->value(t) + adjoint(lhs_->transport(t), rhs_->value(t));
}

GroupMatrix StarResultEvaluator::transport(double t) const {
  return lhs_->transport(t) * rhs_->transport(t);
}

PathHandle evaluator(StepPath f) { return std::make_shared<StepEvaluator>(std::move(f)); }

PathHandle star(PathHandle lhs, PathHandle rhs) {
  return std::make_shared<StarResultEvaluator>(std::move(lhs), std::move(rhs));
}

AlgebraVector star_pointwise(const StepPath& f, const StepPath& g, double t) {
  require_same_partition(f, g, "star_pointwise");
  return f.value_at(t) + adjoint(product_integral(f, t), g.value_at(t));
}

StepPath rho_adjoint(const PartialProductTable& table, const StepPath& g) {
  if (table.intervals() != g.intervals()) {
    throw std::invalid_argument("rho_adjoint: partition mismatch");
  }
  std::vector<AlgebraVector> values;
  values.reserve(static_cast<std::size_t>(g.intervals()));
  for (int i = 0; i < g.intervals(); ++i) values.push_back(adjoint(table[i], g[i]));
  return StepPath(std::move(values));
}

StepPath star_phi(const StepPath& f, const PartialProductTable& table, const StepPath& g) {
  require_same_partition(f, g, "star_phi");
  return f + rho_adjoint(table, g);
}

StepPath star_phi(const StepPath& f, const StepPath& g) {
  require_same_partition(f, g, "star_phi");
  return star_phi(f, PartialProductTable(f), g);
}

double correction_norm(const StepPath& f, const StepPath& g, int quad_points) {
  require_same_partition(f, g, "correction_norm");
  if (quad_points < 1) throw std::invalid_argument("correction_norm: quad_points must be >= 1");
  const PartialProductTable table(f);
  const int n = f.intervals();
  const double width = 1.0 / (static_cast<double>(n) * quad_points);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    // r(t) = exp((t - i/N) f_i) rho_i, so Ad_r g_i = Ad_{exp(..)} (Ad_rho g_i).
    const AlgebraVector frozen = adjoint(table[i], g[i]);
    if (hs_norm(frozen) == 0.0) continue;
    for (int k = 0; k < quad_points; ++k) {
      const double offset = (k + 0.5) * width;
      const AlgebraVector moved = adjoint(exp_matrix(offset * f[i]), frozen);
      sum += (moved.matrix() - frozen.matrix()).squaredNorm();
    }
  }
  return std::sqrt(sum * width);
}

StepPath inverse(const StepPath& f) {
  const PartialProductTable table(f);
  std::vector<AlgebraVector> values;
  values.reserve(static_cast<std::size_t>(f.intervals()));
  for (int i = 0; i < f.intervals(); ++i) values.push_back(-adjoint(table[i].inverse(), f[i]));
  return StepPath(std::move(values));
}

StepPath star_discretized(const StepPath& f, const StepPath& g, int refinement) {
  if (refinement < 1) throw std::invalid_argument("star_discretized: refinement must be >= 1");
  if (f.dim() != g.dim()) throw std::invalid_argument("star_discretized: dimension mismatch");
  const int fine = std::lcm(f.intervals(), g.intervals()) * refinement;
  const PartialProductTable table(f);
  std::vector<AlgebraVector> values;
  values.reserve(static_cast<std::size_t>(fine));
  for (int k = 0; k < fine; ++k) {
    const double t = (k + 0.5) / fine;
    values.push_back(f.value_at(t) + adjoint(product_integral(f, table, t), g.value_at(t)));
  }
  return StepPath(std::move(values));
}

AlgebraVector log_derivative_numeric(const GroupPath& path, double t, double h) {
  if (!(h > 0.0)) throw std::domain_error("log_derivative_numeric: step must be positive");
  if (!(t - h > 0.0 && t + h < 1.0)) {
    throw std::domain_error("log_derivative_numeric: [t - h, t + h] leaves (0, 1)");
  }
  const Matrix derivative = (path(t + h) - path(t - h)) / (2.0 * h);
  return AlgebraVector::skew_part(derivative * path(t).transpose());
}

}  // namespace pathgroup
