#pragma once

// Group law on L^2([0,1], so(d)) identified with based finite-energy paths:
//   (f * g)(t) = f(t) + Ad_{r_f(t)} g(t),   r_f(t) = product integral of f on [0, t].

#include <functional>
#include <memory>
#include <vector>

#include "pathgroup/lie.hpp"
#include "pathgroup/path_space.hpp"

namespace pathgroup {

/// Partial products r_f(i/N), i = 0..N, of a step path. The step function
/// rho_N^f takes the value products()[i] on [i/N, (i+1)/N).
class PartialProductTable {
 public:
  explicit PartialProductTable(const StepPath& f);

  int intervals() const { return static_cast<int>(products_.size()) - 1; }
  const GroupMatrix& operator[](int i) const { return products_[static_cast<std::size_t>(i)]; }
  const std::vector<GroupMatrix>& products() const { return products_; }

  /// rho_N^f(t). At t = 1 the last interval is extended.
  const GroupMatrix& rho(double t) const;

 private:
  std::vector<GroupMatrix> products_;
};

PartialProductTable partial_products(const StepPath& f);

/// r_f(t) = exp((t - t_j) f_j) exp(f_{j-1}/N) ... exp(f_0/N) for t in [t_j, t_{j+1}).
/// Throws std::out_of_range for t outside [0, 1].
GroupMatrix product_integral(const StepPath& f, double t);
GroupMatrix product_integral(const StepPath& f, const PartialProductTable& table, double t);

/// Pointwise view of an element of L^2 together with its product integral.
class PathEvaluator {
 public:
  virtual ~PathEvaluator() = default;
  virtual int dim() const = 0;
  /// The L^2 element at t.
  virtual AlgebraVector value(double t) const = 0;
  /// Its product integral r(t).
  virtual GroupMatrix transport(double t) const = 0;
};

using PathHandle = std::shared_ptr<const PathEvaluator>;

class StepEvaluator final : public PathEvaluator {
 public:
  explicit StepEvaluator(StepPath f) : path_(std::move(f)), table_(path_) {}

  int dim() const override { return path_.dim(); }
  AlgebraVector value(double t) const override { return path_.value_at(t); }
  GroupMatrix transport(double t) const override { return product_integral(path_, table_, t); }

  const StepPath& path() const { return path_; }
  const PartialProductTable& table() const { return table_; }

 private:
  StepPath path_;
  PartialProductTable table_;
};

/// Lazy f * g. The product integral of the result is r_f(t) r_g(t), the
/// integrated form of the cocycle identity.
class StarResultEvaluator final : public PathEvaluator {
 public:
  StarResultEvaluator(PathHandle lhs, PathHandle rhs);

  int dim() const override { return lhs_->dim(); }
  AlgebraVector value(double t) const override;
  GroupMatrix transport(double t) const override;

 private:
  PathHandle lhs_;
  PathHandle rhs_;
};

PathHandle evaluator(StepPath f);
PathHandle star(PathHandle lhs, PathHandle rhs);

/// (f * g)(t). Requires equal N and dim.
AlgebraVector star_pointwise(const StepPath& f, const StepPath& g, double t);

/// phi(f) = f + Ad_{rho_N^f} g, which stays in V_N.
StepPath star_phi(const StepPath& f, const StepPath& g);
StepPath star_phi(const StepPath& f, const PartialProductTable& table, const StepPath& g);

/// Ad_{rho_N^f} g as a step path.
StepPath rho_adjoint(const PartialProductTable& table, const StepPath& g);

/// ||Ad_{r_f} g - Ad_{rho_N^f} g||_2 by the composite midpoint rule with
/// `quad_points` nodes per interval.
double correction_norm(const StepPath& f, const StepPath& g, int quad_points = 32);

/// f^{*-1} = -Ad_{(rho_N^f)^{-1}} f, again a step path on the same partition.
StepPath inverse(const StepPath& f);

/// Midpoint projection of f * g onto V_{M L}, L = lcm of the two partitions.
StepPath star_discretized(const StepPath& f, const StepPath& g, int refinement);

using GroupPath = std::function<Matrix(double)>;

/// Skew part of the central difference (p(t+h) - p(t-h)) / (2h) p(t)^T.
/// Throws std::domain_error unless 0 < t - h and t + h < 1.
AlgebraVector log_derivative_numeric(const GroupPath& path, double t, double h);

}  // namespace pathgroup
