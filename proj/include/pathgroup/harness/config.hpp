#pragma once

// Flat key = value experiment configuration.
//
//   # comment
//   experiment  = invariance          verify | invariance | concentration | jacobian
//   dim         = 3                   matrix size d of SO(d)
//   n_list      = 8, 32, 128          partitions N (each a multiple of g_intervals)
//   alpha       = 0.75                R_N = scale * N^alpha, 1/2 < alpha < 1
//   scale       = 1
//   g_intervals = 8                   coarse partition of g
//   g_coords    = c0, c1, ...         isometric coordinates of g (d_k * g_intervals values)
//   g_seed      = 7                   used when g_coords is absent: random g with
//                                     every interval value of equal HS norm
//   g_norm      = 1                   rescale g to this L2 norm
//   samples     = 256                 samples per N
//   escape_samples = 2000
//   seed        = 42
//   refinement  = 4                   M of the midpoint projection of f * g
//   quad_points = 32
//   witnesses   = 16
//   angle_eps   = 0.1, 0.15, 0.2
//   jacobian_points = 20, jacobian_intervals = 4, jacobian_radius = 5, jacobian_step = 1e-5
//   threads     = 1                   speed only
//   format      = csv | json
//   output      = path                (stdout when empty)
//   fault_exp_scale = 1               test hook: multiplies exp in the Lipschitz check

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathgroup/path_space.hpp"

namespace pathgroup::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  std::string experiment = "invariance";
  int dim = 3;
  std::vector<int> n_list = {8, 32, 128};
  double alpha = 0.75;
  double scale = 1.0;
  int g_intervals = 8;
  std::vector<double> g_coords;
  std::uint64_t g_seed = 7;
  double g_norm = 1.0;
  bool g_norm_set = false;
  int samples = 256;
  int escape_samples = 2000;
  std::uint64_t seed = 42;
  int refinement = 4;
  int quad_points = 32;
  int witnesses = 16;
  std::vector<double> angle_eps = {0.1, 0.15, 0.2};
  int jacobian_points = 20;
  int jacobian_intervals = 4;
  double jacobian_radius = 5.0;
  double jacobian_step = 1e-5;
  int threads = 1;
  OutputFormat format = OutputFormat::Csv;
  std::string output;
  double fault_exp_scale = 1.0;

  /// Throws ConfigError on violated invariants.
  void validate() const;

  /// The coarse g on g_intervals.
  StepPath coarse_g() const;
  /// g refined onto the partition N; throws ConfigError if N is not a multiple
  /// of g_intervals.
  StepPath g_on(int intervals) const;

  /// Sorted key = value rendering of every field; hashed for provenance.
  std::string canonical_text() const;
  std::uint64_t hash() const;
};

/// Defaults tuned per experiment (n_list and sample counts).
ExperimentConfig default_config(const std::string& experiment);

/// Parses text over `base`; errors carry "line L: ..." diagnostics.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

std::string to_string(OutputFormat format);
OutputFormat parse_format(const std::string& text);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace pathgroup::harness
