#pragma once

// Experiment drivers behind the CLI subcommands.

#include <string>
#include <vector>

#include "pathgroup/harness/config.hpp"
#include "pathgroup/harness/jacobian.hpp"
#include "pathgroup/harness/report.hpp"

namespace pathgroup::harness {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double threshold = 0.0;
  int samples = 0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  Table table() const;
};

/// Verification suite: exp Lipschitz bound, Rodrigues cross-check,
/// group axioms, inverse norm, conjugation identity for step paths, cocycle
/// identity by finite differences, homomorphism of the product integral,
/// correction bound, self-adjointness identity and Jacobian determinants.
VerifyReport run_verify(const ExperimentConfig& config);

/// One row per N: R_N, exact MK between nu_{N,R_N} samples and their images
/// under f -> f * g, the independent-sample baseline, the witness lower
/// bound, the analytic correction bound 2 ||g||_inf R_N / N, the observed mean
/// correction, the escape fraction and the projection error bound.
Table run_invariance(const ExperimentConfig& config);

/// One row per N: tail fractions P(|angle - pi/2| > eps), median angle,
/// self-adjointness identity deviation, and fitted exponential decay rates.
Table run_concentration(const ExperimentConfig& config);

/// Jacobian determinants of the inverse map and of phi at random base points.
std::vector<JacobianReport> run_jacobian(const ExperimentConfig& config);
Table jacobian_table(const std::vector<JacobianReport>& reports);

}  // namespace pathgroup::harness
