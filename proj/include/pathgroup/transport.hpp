#pragma once

// Monge-Kantorovich estimators under the truncated cost min(||f - g||_2, 1),
// plus the angle, escape and volume diagnostics used alongside them.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathgroup/path_group.hpp"
#include "pathgroup/sampling.hpp"

namespace pathgroup {

/// Uniformly weighted sample set; all samples share N and dim.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::vector<StepPath> samples);

  int size() const { return static_cast<int>(samples_.size()); }
  int intervals() const { return samples_.front().intervals(); }
  int dim() const { return samples_.front().dim(); }
  const std::vector<StepPath>& samples() const { return samples_; }
  const StepPath& operator[](int i) const { return samples_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<StepPath> samples_;
};

enum class TransportMethod { ExactAssignment, Entropic, WitnessLowerBound };

std::string to_string(TransportMethod method);

struct TransportReport {
  TransportMethod method = TransportMethod::ExactAssignment;
  double value = 0.0;
  int sample_size = 0;
  double regularization = 0.0;
  int witness_count = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  bool converged = true;
  /// L1 marginal violation of the reported plan.
  double marginal_error = 0.0;
  /// L1 row violation of the Sinkhorn plan before rounding.
  double sinkhorn_error = 0.0;
};

nlohmann::json to_json(const TransportReport& report);

inline constexpr int kExactSolverCap = 1024;

/// Cost matrix C_ij = truncated_distance(A_i, B_j).
Matrix cost_matrix(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// Minimum-cost perfect matching of a square cost matrix (shortest augmenting
/// paths with potentials). Returns column assigned to each row.
std::vector<int> solve_assignment(const Matrix& cost);

/// Exact W_1 between equal-size empirical measures. Throws
/// std::invalid_argument on unequal sizes or n > kExactSolverCap.
TransportReport mk_exact(const EmpiricalMeasure& a, const EmpiricalMeasure& b);
TransportReport mk_exact(const Matrix& cost);

/// Log-domain Sinkhorn with regularization annealing, stopped at a row-marginal
/// L1 violation of 1e-8 or after `iterations` sweeps. The plan is then rounded
/// onto the uniform couplings and the report carries its cost <P, C>.
/// `converged` is false when the Sinkhorn violation before rounding is above
/// 1e-6 or the rounded plan misses the marginals by more than 1e-8.
TransportReport mk_entropic(const EmpiricalMeasure& a, const EmpiricalMeasure& b, double reg,
                            int iterations = 20000);
TransportReport mk_entropic(const Matrix& cost, double reg, int iterations = 20000);

/// Bounded functional used as a dual witness.
struct Witness {
  std::string label;
  std::function<double(const StepPath&)> eval;
};

/// f -> min(max(||f - center||_2 - radius, 0), 1): truncated distance to a ball.
Witness ball_distance_witness(StepPath center, double radius, std::string label = {});

/// f -> min(||f - anchor||_2, 1).
Witness anchor_witness(StepPath anchor, std::string label = {});

/// max_F |mean_A F - mean_B F|. Every witness is first checked on 1000 random
/// pairs drawn from A and B (keyed by `seed`) for |F| <= 1 and
/// |F(x) - F(y)| <= truncated_distance(x, y); a violation throws
/// std::invalid_argument.
TransportReport witness_gap(const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                            std::span<const Witness> witnesses, std::uint64_t seed = 0);

/// Angle in [0, pi] between f and Ad_{rho_N^f} g. Throws on zero-norm input.
double angle_statistic(const StepPath& f, const StepPath& g);
double angle_statistic(const StepPath& f, const PartialProductTable& table, const StepPath& g);

/// Fraction of f ~ nu_{N,R} with ||f + Ad_{rho_N^f} g||_2 > R over trials
/// 0..count-1. g must live on the partition of `spec`.
double escape_fraction(const MeasureSpec& spec, const StepPath& g, int count);

/// (1 + C eps / R)^{d_k N}.
double volume_ratio(int algebra_dim, int intervals, double radius, double eps, double c);

}  // namespace pathgroup
