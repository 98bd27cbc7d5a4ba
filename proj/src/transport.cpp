#include "pathgroup/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pathgroup {

EmpiricalMeasure::EmpiricalMeasure(std::vector<StepPath> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("EmpiricalMeasure: no samples");
  for (const auto& s : samples_) {
    if (s.intervals() != samples_.front().intervals() || s.dim() != samples_.front().dim()) {
      throw std::invalid_argument("EmpiricalMeasure: samples must share N and dim");
    }
  }
}

std::string to_string(TransportMethod method) {
  switch (method) {
    case TransportMethod::ExactAssignment:
      return "exact-assignment";
    case TransportMethod::Entropic:
      return "entropic";
    case TransportMethod::WitnessLowerBound:
      return "witness-lower-bound";
  }
  return "unknown";
}

nlohmann::json to_json(const TransportReport& report) {
  return {{"method", to_string(report.method)},
          {"value", report.value},
          {"sample_size", report.sample_size},
          {"regularization", report.regularization},
          {"witness_count", report.witness_count},
          {"seed", report.seed},
          {"iterations", report.iterations},
          {"converged", report.converged},
          {"marginal_error", report.marginal_error},
          {"sinkhorn_error", report.sinkhorn_error}};
}

Matrix cost_matrix(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (a.intervals() != b.intervals() || a.dim() != b.dim()) {
    throw std::invalid_argument("cost_matrix: measures live on different spaces");
  }
  Matrix cost(a.size(), b.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) cost(i, j) = truncated_distance(a[i], b[j]);
  }
  return cost;
}

std::vector<int> solve_assignment(const Matrix& cost) {
  if (cost.rows() != cost.cols()) throw std::invalid_argument("solve_assignment: matrix not square");
  const int n = static_cast<int>(cost.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) row_to_col[static_cast<std::size_t>(match[j] - 1)] = j - 1;
  return row_to_col;
}

TransportReport mk_exact(const Matrix& cost) {
  if (cost.rows() != cost.cols()) {
    throw std::invalid_argument("mk_exact: measures must have equal size");
  }
  const int n = static_cast<int>(cost.rows());
  if (n > kExactSolverCap) {
    throw std::invalid_argument("mk_exact: n = " + std::to_string(n) + " exceeds the exact cap of " +
                                std::to_string(kExactSolverCap));
  }
  const auto assignment = solve_assignment(cost);
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += cost(i, assignment[static_cast<std::size_t>(i)]);
  TransportReport report;
  report.method = TransportMethod::ExactAssignment;
  report.value = std::clamp(total / n, 0.0, 1.0);
  report.sample_size = n;
  return report;
}

TransportReport mk_exact(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (a.size() != b.size()) throw std::invalid_argument("mk_exact: measures must have equal size");
  if (a.size() > kExactSolverCap) {
    throw std::invalid_argument("mk_exact: n exceeds the exact cap");
  }
  return mk_exact(cost_matrix(a, b));
}

namespace {

constexpr double kMarginalTolerance = 1e-8;
// Sinkhorn row violation below which the rounded plan counts as converged;
// rounding moves the cost by at most 2 max(C) times this.
constexpr double kSinkhornTolerance = 1e-6;

// One Sinkhorn sweep in the log domain at regularization `reg`; returns the
// L1 violation of the row marginals after the column update.
double sinkhorn_sweep(const Matrix& cost, double reg, Eigen::VectorXd& f, Eigen::VectorXd& g) {
  const auto n = cost.rows();
  const auto m = cost.cols();
  const double log_a = -std::log(static_cast<double>(n));
  const double log_b = -std::log(static_cast<double>(m));
  for (Eigen::Index i = 0; i < n; ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < m; ++j) mx = std::max(mx, (g(j) - cost(i, j)) / reg);
    double s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) s += std::exp((g(j) - cost(i, j)) / reg - mx);
    f(i) = reg * (log_a - mx - std::log(s));
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) mx = std::max(mx, (f(i) - cost(i, j)) / reg);
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += std::exp((f(i) - cost(i, j)) / reg - mx);
    g(j) = reg * (log_b - mx - std::log(s));
  }
  double err = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) row += std::exp((f(i) + g(j) - cost(i, j)) / reg);
    err += std::abs(row - 1.0 / static_cast<double>(n));
  }
  return err;
}

// Projects a nonnegative plan onto the couplings of the uniform marginals
// (Altschuler, Weed, Rigollet 2017): scale rows and columns down to their
// targets, then spread the remaining mass as a rank-one correction.
void round_to_marginals(Matrix& plan) {
  const auto n = plan.rows();
  const auto m = plan.cols();
  const double a = 1.0 / static_cast<double>(n);
  const double b = 1.0 / static_cast<double>(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double row = plan.row(i).sum();
    if (row > a) plan.row(i) *= a / row;
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    const double col = plan.col(j).sum();
    if (col > b) plan.col(j) *= b / col;
  }
  const Eigen::VectorXd row_deficit = (a - plan.rowwise().sum().array()).max(0.0).matrix();
  const Eigen::RowVectorXd col_deficit = (b - plan.colwise().sum().array()).max(0.0).matrix();
  const double mass = row_deficit.sum();
  if (mass > 0.0) plan += row_deficit * col_deficit / mass;
}

double marginal_violation(const Matrix& plan) {
  const double a = 1.0 / static_cast<double>(plan.rows());
  const double b = 1.0 / static_cast<double>(plan.cols());
  return (plan.rowwise().sum().array() - a).abs().sum() + (plan.colwise().sum().array() - b).abs().sum();
}

}  // namespace

TransportReport mk_entropic(const Matrix& cost, double reg, int iterations) {
  if (!(reg > 0.0)) throw std::invalid_argument("mk_entropic: regularization must be positive");
  if (iterations < 1) throw std::invalid_argument("mk_entropic: iterations must be positive");
  const auto n = cost.rows();
  const auto m = cost.cols();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m);

  // Anneal from the cost scale down to `reg`, warm-starting the potentials.
  const double start = std::max(reg, cost.size() > 0 ? cost.maxCoeff() : 0.0);
  int used = 0;
  double err = std::numeric_limits<double>::infinity();
  for (double stage = start;; stage = std::max(reg, 0.5 * stage)) {
    const bool last = stage <= reg;
    const double target = last ? kMarginalTolerance : 1e-4;
    int stage_iters = 0;
    while (used < iterations && (last || stage_iters < 500)) {
      err = sinkhorn_sweep(cost, stage, f, g);
      ++used;
      ++stage_iters;
      if (err <= target) break;
    }
    if (last || used >= iterations) break;
  }

  Matrix plan(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) plan(i, j) = std::exp((f(i) + g(j) - cost(i, j)) / reg);
  }
  round_to_marginals(plan);

  TransportReport report;
  report.method = TransportMethod::Entropic;
  report.value = std::clamp(plan.cwiseProduct(cost).sum(), 0.0, 1.0);
  report.sample_size = static_cast<int>(n);
  report.regularization = reg;
  report.iterations = used;
  report.sinkhorn_error = err;
  report.marginal_error = marginal_violation(plan);
  report.converged = err <= kSinkhornTolerance && report.marginal_error <= kMarginalTolerance;
  return report;
}

TransportReport mk_entropic(const EmpiricalMeasure& a, const EmpiricalMeasure& b, double reg,
                            int iterations) {
  return mk_entropic(cost_matrix(a, b), reg, iterations);
}

Witness ball_distance_witness(StepPath center, double radius, std::string label) {
  if (radius < 0.0) throw std::invalid_argument("ball_distance_witness: negative radius");
  if (label.empty()) label = "ball(r=" + std::to_string(radius) + ")";
  return {std::move(label), [center = std::move(center), radius](const StepPath& f) {
            double sum = 0.0;
            for (int i = 0; i < f.intervals(); ++i) {
              sum += (f[i].matrix() - center[i].matrix()).squaredNorm();
            }
            const double dist = std::sqrt(sum / f.intervals());
            return std::clamp(dist - radius, 0.0, 1.0);
          }};
}

Witness anchor_witness(StepPath anchor, std::string label) {
  if (label.empty()) label = "anchor";
  return ball_distance_witness(std::move(anchor), 0.0, std::move(label));
}

TransportReport witness_gap(const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                            std::span<const Witness> witnesses, std::uint64_t seed) {
  if (a.intervals() != b.intervals() || a.dim() != b.dim()) {
    throw std::invalid_argument("witness_gap: measures live on different spaces");
  }
  constexpr int kLipschitzPairs = 1000;
  constexpr double kSlack = 1e-12;
  const int pool = a.size() + b.size();
  auto pick = [&](std::uint64_t r) -> const StepPath& {
    const int k = static_cast<int>(r % static_cast<std::uint64_t>(pool));
    return k < a.size() ? a[k] : b[k - a.size()];
  };

  double best = 0.0;
  for (std::size_t w = 0; w < witnesses.size(); ++w) {
    const auto& witness = witnesses[w];
    auto rng = make_stream(seed, w);
    for (int p = 0; p < kLipschitzPairs; ++p) {
      const StepPath& x = pick(rng());
      const StepPath& y = pick(rng());
      const double fx = witness.eval(x);
      const double fy = witness.eval(y);
      if (std::abs(fx) > 1.0 + kSlack || std::abs(fy) > 1.0 + kSlack) {
        throw std::invalid_argument("witness_gap: witness '" + witness.label + "' exceeds bound 1");
      }
      if (std::abs(fx - fy) > truncated_distance(x, y) + kSlack) {
        throw std::invalid_argument("witness_gap: witness '" + witness.label +
                                    "' is not 1-Lipschitz for the truncated metric");
      }
    }
    double mean_a = 0.0;
    for (const auto& s : a.samples()) mean_a += witness.eval(s);
    double mean_b = 0.0;
    for (const auto& s : b.samples()) mean_b += witness.eval(s);
    best = std::max(best, std::abs(mean_a / a.size() - mean_b / b.size()));
  }
  TransportReport report;
  report.method = TransportMethod::WitnessLowerBound;
  report.value = std::clamp(best, 0.0, 1.0);
  report.sample_size = a.size();
  report.witness_count = static_cast<int>(witnesses.size());
  report.seed = seed;
  return report;
}

double angle_statistic(const StepPath& f, const PartialProductTable& table, const StepPath& g) {
  const StepPath h = rho_adjoint(table, g);
  const double nf = l2_norm(f);
  const double nh = l2_norm(h);
  if (nf == 0.0 || nh == 0.0) throw std::invalid_argument("angle_statistic: zero-norm input");
  return std::acos(std::clamp(l2_inner(f, h) / (nf * nh), -1.0, 1.0));
}

double angle_statistic(const StepPath& f, const StepPath& g) {
  if (f.intervals() != g.intervals()) throw std::invalid_argument("angle_statistic: partition mismatch");
  return angle_statistic(f, PartialProductTable(f), g);
}

double escape_fraction(const MeasureSpec& spec, const StepPath& g, int count) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("escape_fraction: count must be positive");
  if (g.intervals() != spec.intervals || g.dim() != spec.dim) {
    throw std::invalid_argument("escape_fraction: g does not live on V_N of the measure");
  }
  int escaped = 0;
  for (int k = 0; k < count; ++k) {
    const StepPath f = sample_ball_point(spec, static_cast<std::uint64_t>(k));
    if (l2_norm(star_phi(f, g)) > spec.radius) ++escaped;
  }
  return static_cast<double>(escaped) / count;
}

double volume_ratio(int algebra_dim, int intervals, double radius, double eps, double c) {
  if (!(radius > 0.0)) throw std::invalid_argument("volume_ratio: radius must be positive");
  if (eps < 0.0) throw std::invalid_argument("volume_ratio: eps must be nonnegative");
  const double exponent = static_cast<double>(algebra_dim) * intervals;
  return std::exp(exponent * std::log1p(c * eps / radius));
}

}  // namespace pathgroup
