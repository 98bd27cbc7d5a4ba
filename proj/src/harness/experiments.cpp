#include "pathgroup/harness/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "pathgroup/parallel.hpp"
#include "pathgroup/path_group.hpp"
#include "pathgroup/sampling.hpp"
#include "pathgroup/transport.hpp"

namespace pathgroup::harness {

namespace {

constexpr std::uint64_t kBaselineSalt = 0xB45E11E5B45E11E5ULL;

AlgebraVector random_algebra(SplitMix64& rng, int dim, double radius) {
  return AlgebraVector::from_coordinates(
      dim, sample_ball_coordinates(rng, algebra_dimension(dim), radius));
}

std::vector<double> grid(int points) {
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) t[static_cast<std::size_t>(k)] = static_cast<double>(k) / (points - 1);
  return t;
}

CheckResult make_check(std::string name, double deviation, double threshold, int samples,
                       std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.max_deviation = deviation;
  c.threshold = threshold;
  c.samples = samples;
  c.passed = deviation <= threshold;
  c.detail = std::move(detail);
  return c;
}

MeasureSpec sub_spec(const ExperimentConfig& config, int intervals, double radius, std::uint64_t salt) {
  return MeasureSpec{intervals, radius, config.dim, stream_seed(config.seed, salt)};
}

CheckResult check_exp_lipschitz(const ExperimentConfig& config) {
  constexpr int kPairs = 10000;
  auto rng = make_stream(config.seed, 101);
  const double scale = config.fault_exp_scale;
  double worst = -std::numeric_limits<double>::infinity();
  int violations = 0;
  for (int p = 0; p < kPairs; ++p) {
    const AlgebraVector x = random_algebra(rng, config.dim, 5.0);
    // Every other pair is a small perturbation, where the bound is nearly tight.
    AlgebraVector y = (p % 2 == 0) ? random_algebra(rng, config.dim, 5.0)
                                   : x + random_algebra(rng, config.dim, 1e-3);
    const double ny = hs_norm(y);
    if (ny > 5.0) y *= 5.0 / ny;
    const Matrix ex = scale * exp_matrix(x).matrix();
    const Matrix ey = scale * exp_matrix(y).matrix();
    const double excess = uniform_norm(ex - ey) - uniform_norm(x.matrix() - y.matrix());
    worst = std::max(worst, excess);
    if (excess > 1e-12) ++violations;
  }
  return make_check("exp_lipschitz", worst, 1e-12, kPairs,
                    std::to_string(violations) + " violations of ||e^X - e^Y||_u <= ||X - Y||_u");
}

CheckResult check_exp_group(const ExperimentConfig& config) {
  constexpr int kCount = 1000;
  auto rng = make_stream(config.seed, 102);
  double worst = 0.0;
  const Matrix id = Matrix::Identity(config.dim, config.dim);
  for (int k = 0; k < kCount; ++k) {
    const AlgebraVector x = random_algebra(rng, config.dim, 5.0);
    const Matrix e = exp_matrix(x).matrix();
    worst = std::max(worst, (e * exp_matrix(-x).matrix() - id).norm());
    worst = std::max(worst, (e.transpose() * e - id).norm());
    worst = std::max(worst, std::abs(e.determinant() - 1.0));
  }
  return make_check("exp_in_group", worst, 1e-10, kCount);
}

CheckResult check_rodrigues(const ExperimentConfig& config) {
  constexpr int kCount = 1000;
  if (config.dim != 3) return make_check("rodrigues_crosscheck", 0.0, 1e-12, 0, "skipped: d != 3");
  auto rng = make_stream(config.seed, 103);
  double worst = 0.0;
  for (int k = 0; k < kCount; ++k) {
    const AlgebraVector x = random_algebra(rng, 3, 5.0);
    worst = std::max(worst, (exp_rodrigues(x).matrix() - exp_pade(x).matrix()).norm());
  }
  return make_check("rodrigues_crosscheck", worst, 1e-12, kCount);
}

std::vector<CheckResult> check_group_axioms(const ExperimentConfig& config) {
  constexpr int kTriples = 100;
  const auto ts = grid(101);
  const auto fs = sample_ball(sub_spec(config, 8, 5.0, 201), kTriples);
  const auto gs = sample_ball(sub_spec(config, 8, 5.0, 202), kTriples);
  const auto hs = sample_ball(sub_spec(config, 8, 5.0, 203), kTriples);
  const StepPath zero = StepPath::zero(config.dim, 8);
  const auto zero_eval = evaluator(zero);

  const auto per_triple = parallel::map_trials(kTriples, config.threads, [&](int k) {
    const auto i = static_cast<std::size_t>(k);
    const auto f = evaluator(fs[i]);
    const auto g = evaluator(gs[i]);
    const auto h = evaluator(hs[i]);
    const auto left = star(star(f, g), h);
    const auto right = star(f, star(g, h));
    const auto f_inv = evaluator(inverse(fs[i]));
    const auto f_zero = star(f, zero_eval);
    const auto zero_g = star(zero_eval, g);
    std::array<double, 3> dev{0.0, 0.0, 0.0};
    for (double t : ts) {
      dev[0] = std::max(dev[0], (left->value(t).matrix() - right->value(t).matrix()).norm());
      dev[1] = std::max(dev[1], (f_zero->value(t).matrix() - f->value(t).matrix()).cwiseAbs().maxCoeff());
      dev[1] = std::max(dev[1], (zero_g->value(t).matrix() - g->value(t).matrix()).cwiseAbs().maxCoeff());
      dev[2] = std::max(dev[2], hs_norm(star(f, f_inv)->value(t)));
    }
    return dev;
  });
  std::array<double, 3> worst{0.0, 0.0, 0.0};
  for (const auto& d : per_triple) {
    for (std::size_t j = 0; j < 3; ++j) worst[j] = std::max(worst[j], d[j]);
  }
  return {make_check("group_associativity", worst[0], 1e-9, kTriples),
          make_check("group_identity", worst[1], 0.0, kTriples, "f*0 = f and 0*g = g exactly"),
          make_check("group_inverse", worst[2], 1e-9, kTriples)};
}

CheckResult check_inverse_norm(const ExperimentConfig& config) {
  constexpr int kCount = 1000;
  const auto fs = sample_ball(sub_spec(config, 8, 5.0, 204), kCount);
  double worst = 0.0;
  for (const auto& f : fs) worst = std::max(worst, std::abs(l2_norm(inverse(f)) - l2_norm(f)));
  return make_check("inverse_norm", worst, 1e-12, kCount);
}

CheckResult check_conjugation_identity(const ExperimentConfig& config) {
  constexpr int kCount = 1000;
  const auto ts = grid(101);
  const auto fs = sample_ball(sub_spec(config, 8, 5.0, 205), kCount);
  const auto per_path = parallel::map_trials(kCount, config.threads, [&](int k) {
    const StepPath& f = fs[static_cast<std::size_t>(k)];
    const PartialProductTable table(f);
    double dev = 0.0;
    for (double t : ts) {
      const AlgebraVector& ft = f.value_at(t);
      const AlgebraVector exact = adjoint(product_integral(f, table, t).inverse(), ft);
      const AlgebraVector frozen = adjoint(table.rho(t).inverse(), ft);
      dev = std::max(dev, (exact.matrix() - frozen.matrix()).norm());
    }
    return dev;
  });
  return make_check("conjugation_identity", *std::max_element(per_path.begin(), per_path.end()),
                    1e-10, kCount);
}

CheckResult check_cocycle(const ExperimentConfig& config) {
  constexpr int kPairs = 20;
  constexpr double kStep = 1e-5;
  const auto fs = sample_ball(sub_spec(config, 8, 1.0, 206), kPairs);
  const auto gs = sample_ball(sub_spec(config, 8, 1.0, 207), kPairs);
  double worst = 0.0;
  for (int k = 0; k < kPairs; ++k) {
    const StepPath& f = fs[static_cast<std::size_t>(k)];
    const StepPath& g = gs[static_cast<std::size_t>(k)];
    const PartialProductTable tf(f);
    const PartialProductTable tg(g);
    const GroupPath product = [&](double t) -> Matrix {
      return (product_integral(f, tf, t) * product_integral(g, tg, t)).matrix();
    };
    for (int i = 0; i < f.intervals(); ++i) {
      const double t = (i + 0.5) / f.intervals();
      const AlgebraVector numeric = log_derivative_numeric(product, t, kStep);
      const AlgebraVector expected = star_pointwise(f, g, t);
      worst = std::max(worst, (numeric.matrix() - expected.matrix()).norm());
    }
  }
  return make_check("cocycle_log_derivative", worst, 1e-5, kPairs);
}

CheckResult check_homomorphism(const ExperimentConfig& config) {
  constexpr int kPairs = 20;
  const auto fs = sample_ball(sub_spec(config, 8, 1.0, 208), kPairs);
  const auto gs = sample_ball(sub_spec(config, 8, 1.0, 209), kPairs);
  const auto errors = parallel::map_trials(kPairs, config.threads, [&](int k) {
    const StepPath& f = fs[static_cast<std::size_t>(k)];
    const StepPath& g = gs[static_cast<std::size_t>(k)];
    const Matrix target = (product_integral(f, 1.0) * product_integral(g, 1.0)).matrix();
    std::array<double, 2> err{};
    for (std::size_t j = 0; j < 2; ++j) {
      const int m = 512 << j;
      err[j] = (product_integral(star_discretized(f, g, m), 1.0).matrix() - target).norm();
    }
    return err;
  });
  double worst = 0.0;
  int not_decreasing = 0;
  for (const auto& e : errors) {
    worst = std::max(worst, e[0]);
    if (!(e[1] < e[0])) ++not_decreasing;
  }
  CheckResult c = make_check("homomorphism", worst, 1e-3, kPairs,
                             std::to_string(not_decreasing) + " pairs without error decrease at M=1024");
  c.passed = c.passed && not_decreasing == 0;
  return c;
}

CheckResult check_correction_bound(const ExperimentConfig& config) {
  constexpr int kCount = 200;
  const RadiusSchedule schedule(0.75, 1.0);
  ExperimentConfig unit_g = config;
  unit_g.g_norm = 1.0;
  unit_g.g_coords.clear();
  unit_g.g_intervals = 8;
  double worst = -std::numeric_limits<double>::infinity();
  for (int n : {8, 32, 128}) {
    const StepPath g = unit_g.g_on(n);
    const double g_sup = sup_norm(g);
    const auto fs = sample_ball(sub_spec(config, n, schedule.radius_for(n), 300 + n), kCount);
    const auto excess = parallel::map_trials(kCount, config.threads, [&](int k) {
      const StepPath& f = fs[static_cast<std::size_t>(k)];
      return correction_norm(f, g, config.quad_points) - 2.0 * g_sup * l2_norm(f) / n;
    });
    worst = std::max(worst, *std::max_element(excess.begin(), excess.end()));
  }
  return make_check("correction_bound", worst, 1e-8, 3 * kCount,
                    "max of correction - 2 ||g||_inf ||f||_2 / N");
}

CheckResult check_self_adjointness(const ExperimentConfig& config) {
  constexpr int kCount = 1000;
  const StepPath g = config.g_on(config.g_intervals);
  const auto fs = sample_ball(sub_spec(config, config.g_intervals, 5.0, 210), kCount);
  double worst = 0.0;
  for (const auto& f : fs) {
    const PartialProductTable table(f);
    const double lhs = l2_inner(f, rho_adjoint(table, g));
    const double rhs = -l2_inner(inverse(f), g);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return make_check("self_adjointness", worst, 1e-10, kCount);
}

std::vector<CheckResult> check_jacobians(const ExperimentConfig& config) {
  const auto reports = run_jacobian(config);
  double inv = 0.0;
  double phi = 0.0;
  for (const auto& r : reports) {
    double& worst = r.map_tag == "inverse" ? inv : phi;
    worst = std::max(worst, r.deviation);
  }
  return {make_check("jacobian_inverse", inv, 1e-4, config.jacobian_points),
          make_check("jacobian_phi", phi, 1e-4, config.jacobian_points)};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Least-squares slope of log(tail) against N over the positive tails; the
// decay rate is its negative. NaN when fewer than two tails are positive.
double fitted_decay_rate(const std::vector<int>& ns, const std::vector<double>& tails) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (tails[i] > 0.0) pts.emplace_back(ns[i], std::log(tails[i]));
  }
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return -sxy / sxx;
}

std::string eps_label(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", eps);
  return buf;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Table VerifyReport::table() const {
  Table t;
  t.columns = {{"check", ""}, {"passed", ""}, {"max_deviation", ""}, {"threshold", ""},
               {"samples", ""}, {"detail", ""}};
  for (const auto& c : checks) {
    t.add_row({c.name, c.passed, c.max_deviation, c.threshold, std::int64_t{c.samples}, c.detail});
  }
  return t;
}

VerifyReport run_verify(const ExperimentConfig& config) {
  config.validate();
  VerifyReport report;
  report.checks.push_back(check_exp_lipschitz(config));
  report.checks.push_back(check_exp_group(config));
  report.checks.push_back(check_rodrigues(config));
  for (auto& c : check_group_axioms(config)) report.checks.push_back(std::move(c));
  report.checks.push_back(check_inverse_norm(config));
  report.checks.push_back(check_conjugation_identity(config));
  report.checks.push_back(check_cocycle(config));
  report.checks.push_back(check_homomorphism(config));
  report.checks.push_back(check_correction_bound(config));
  report.checks.push_back(check_self_adjointness(config));
  for (auto& c : check_jacobians(config)) report.checks.push_back(std::move(c));
  return report;
}

Table run_invariance(const ExperimentConfig& config) {
  config.validate();
  const RadiusSchedule schedule(config.alpha, config.scale);
  const int m = config.refinement;
  const int n_samples = config.samples;

  Table table;
  table.columns = {{"N", ""},
                   {"R_N", ""},
                   {"samples", ""},
                   {"mk_exact", ""},
                   {"mk_baseline", ""},
                   {"witness_gap", ""},
                   {"correction_bound", ""},
                   {"correction_mean", ""},
                   {"escape_fraction", ""},
                   {"projection_error_bound", ""}};

  for (int n : config.n_list) {
    const double radius = schedule.radius_for(n);
    const StepPath g = config.g_on(n);
    const double g_sup = sup_norm(g);
    const MeasureSpec spec{n, radius, config.dim, config.seed};
    const MeasureSpec baseline_spec{n, radius, config.dim, config.seed ^ kBaselineSalt};

    const auto fs = parallel::sample_ball(spec, n_samples, config.threads);
    const auto others = parallel::sample_ball(baseline_spec, n_samples, config.threads);

    struct Pushed {
      StepPath source;
      StepPath image;
      StepPath other;
      double correction = 0.0;
    };
    const auto pushed = parallel::map_trials(n_samples, config.threads, [&](int k) {
      const StepPath& f = fs[static_cast<std::size_t>(k)];
      return Pushed{refine(f, m), star_discretized(f, g, m),
                    refine(others[static_cast<std::size_t>(k)], m),
                    correction_norm(f, g, config.quad_points)};
    });

    std::vector<StepPath> sources, images, baseline;
    double correction_sum = 0.0;
    double max_norm = 0.0;
    for (std::size_t k = 0; k < pushed.size(); ++k) {
      sources.push_back(pushed[k].source);
      images.push_back(pushed[k].image);
      baseline.push_back(pushed[k].other);
      correction_sum += pushed[k].correction;
      max_norm = std::max(max_norm, l2_norm(fs[k]));
    }
    const EmpiricalMeasure a(std::move(sources));
    const EmpiricalMeasure b(std::move(images));
    const EmpiricalMeasure base(std::move(baseline));

    const double mk = parallel::mk_exact(a, b, config.threads).value;
    const double mk_base = parallel::mk_exact(a, base, config.threads).value;

    // Radial witnesses detect mass pushed out of the ball; anchors cover the rest.
    std::vector<Witness> witnesses;
    const StepPath origin = StepPath::zero(config.dim, n * m);
    for (double shift : {0.0, 0.25, 0.5, 0.75}) {
      if (static_cast<int>(witnesses.size()) >= config.witnesses) break;
      witnesses.push_back(ball_distance_witness(origin, std::max(radius - shift, 0.0)));
    }
    for (int k = 0; static_cast<int>(witnesses.size()) < config.witnesses && k < n_samples; ++k) {
      witnesses.push_back(anchor_witness(k % 2 == 0 ? b[k / 2] : a[k / 2]));
    }
    const double gap = witnesses.empty() ? 0.0 : witness_gap(a, b, witnesses, config.seed).value;

    const double escape =
        parallel::escape_fraction(spec, g, config.escape_samples, config.threads);

    table.add_row({std::int64_t{n}, radius, std::int64_t{n_samples}, mk, mk_base, gap,
                   2.0 * g_sup * radius / n, correction_sum / n_samples, escape,
                   g_sup * max_norm / (static_cast<double>(m) * n)});
  }
  return table;
}

Table run_concentration(const ExperimentConfig& config) {
  config.validate();
  const RadiusSchedule schedule(config.alpha, config.scale);
  Table table;
  table.columns = {{"N", ""}, {"R_N", ""}, {"samples", ""}};
  for (double eps : config.angle_eps) table.columns.push_back({"tail_" + eps_label(eps), ""});
  table.columns.push_back({"median_angle", "rad"});
  table.columns.push_back({"identity_max_dev", ""});
  for (double eps : config.angle_eps) table.columns.push_back({"decay_rate_" + eps_label(eps), "1/N"});

  std::vector<std::vector<double>> tails(config.angle_eps.size());
  std::vector<std::vector<Cell>> rows;
  for (int n : config.n_list) {
    const double radius = schedule.radius_for(n);
    const StepPath g = config.g_on(n);
    const MeasureSpec spec{n, radius, config.dim, config.seed};
    const auto stats = parallel::map_trials(config.samples, config.threads, [&](int k) {
      const StepPath f = sample_ball_point(spec, static_cast<std::uint64_t>(k));
      const PartialProductTable table_f(f);
      const double angle = angle_statistic(f, table_f, g);
      const double lhs = l2_inner(f, rho_adjoint(table_f, g));
      const double rhs = -l2_inner(inverse(f), g);
      return std::pair<double, double>{angle, std::abs(lhs - rhs)};
    });
    std::vector<double> angles;
    double identity_dev = 0.0;
    for (const auto& [angle, dev] : stats) {
      angles.push_back(angle);
      identity_dev = std::max(identity_dev, dev);
    }
    std::vector<Cell> row{std::int64_t{n}, radius, std::int64_t{config.samples}};
    for (std::size_t e = 0; e < config.angle_eps.size(); ++e) {
      const double eps = config.angle_eps[e];
      const auto count = std::count_if(angles.begin(), angles.end(), [&](double a) {
        return std::abs(a - std::numbers::pi / 2) > eps;
      });
      const double tail = static_cast<double>(count) / static_cast<double>(angles.size());
      tails[e].push_back(tail);
      row.emplace_back(tail);
    }
    row.emplace_back(median(angles));
    row.emplace_back(identity_dev);
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    for (std::size_t e = 0; e < config.angle_eps.size(); ++e) {
      row.emplace_back(fitted_decay_rate(config.n_list, tails[e]));
    }
    table.add_row(std::move(row));
  }
  return table;
}

std::vector<JacobianReport> run_jacobian(const ExperimentConfig& config) {
  config.validate();
  const int n = config.jacobian_intervals;
  const MeasureSpec spec{n, config.jacobian_radius, config.dim, stream_seed(config.seed, 400)};
  const MeasureSpec g_spec{n, 1.0, config.dim, stream_seed(config.seed, 401)};
  const StepPath g = sample_ball_point(g_spec, 0);
  const PathMap inverse_map = [](const StepPath& f) { return inverse(f); };
  const PathMap phi_map = [&g](const StepPath& f) { return star_phi(f, g); };

  const auto per_point = parallel::map_trials(config.jacobian_points, config.threads, [&](int k) {
    const StepPath point = sample_ball_point(spec, static_cast<std::uint64_t>(k));
    return std::pair<JacobianReport, JacobianReport>{
        jacobian_report("inverse", inverse_map, point, config.jacobian_step),
        jacobian_report("phi", phi_map, point, config.jacobian_step)};
  });
  std::vector<JacobianReport> out;
  for (const auto& [inv, phi] : per_point) {
    out.push_back(inv);
    out.push_back(phi);
  }
  return out;
}

Table jacobian_table(const std::vector<JacobianReport>& reports) {
  Table t;
  t.columns = {{"map", ""},       {"point", ""},     {"step", ""},
               {"determinant", ""}, {"deviation", ""}, {"base_point", ""}};
  std::int64_t index = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    std::string coords;
    for (std::size_t j = 0; j < r.base_point.size(); ++j) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%s%.17g", j ? ";" : "", r.base_point[j]);
      coords += buf;
    }
    t.add_row({r.map_tag, index, r.step, r.determinant, r.deviation, coords});
    if (i % 2 == 1) ++index;
  }
  return t;
}

}  // namespace pathgroup::harness
