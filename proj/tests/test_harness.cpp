#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pathgroup/harness/experiments.hpp"
#include "pathgroup/path_group.hpp"
#include "pathgroup/sampling.hpp"

using namespace pathgroup;
using namespace pathgroup::harness;

namespace {

std::string render(const Table& table, const ExperimentConfig& config, OutputFormat format) {
  std::ostringstream out;
  write_table(out, table, provenance_for(config), format);
  return out.str();
}

ExperimentConfig small_invariance() {
  auto config = default_config("invariance");
  config.n_list = {8, 16};
  config.samples = 24;
  config.escape_samples = 100;
  config.witnesses = 6;
  return config;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto config = parse_config(
      "# comment\n"
      "experiment = concentration\n"
      "n_list = 16, 64\n"
      "alpha = 0.7   # trailing comment\n"
      "seed = 9\n"
      "angle_eps = 0.1, 0.3\n"
      "format = json\n");
  CHECK(config.experiment == "concentration");
  CHECK(config.n_list == std::vector<int>{16, 64});
  CHECK(config.alpha == 0.7);
  CHECK(config.seed == 9);
  CHECK(config.angle_eps == std::vector<double>{0.1, 0.3});
  CHECK(config.format == OutputFormat::Json);

  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("n_list =\n").find("n_list is empty") != std::string::npos);
  CHECK(message("seed = 1\nbogus = 2\n") == "line 2: unknown key 'bogus'");
  CHECK(message("seed = 1\nseed = 2\n").find("line 2: duplicate key") == 0);
  CHECK(message("dim = three\n").find("line 1: dim") == 0);
  CHECK(message("no equals sign\n").find("line 1:") == 0);
  CHECK(message("n_list = 8, 12\n").find("not a multiple") != std::string::npos);
  CHECK(message("alpha = 0.5\n").find("alpha") != std::string::npos);
  CHECK(message("threads = 0\n").find("threads") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), ConfigError);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
  CHECK(message("format = xml\n").find("line 1: format") == 0);
  CHECK(message("experiment = jacobian\njacobian_intervals = 30\n").find("jacobian_intervals") !=
        std::string::npos);
}

TEST_CASE("config hash ignores speed-only settings") {
  auto a = default_config("invariance");
  auto b = a;
  b.threads = 8;
  b.output = "somewhere.csv";
  CHECK(a.hash() == b.hash());
  b.seed = a.seed + 1;
  CHECK(a.hash() != b.hash());
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("coarse g is refined onto each partition") {
  auto config = default_config("invariance");
  const auto coarse = config.coarse_g();
  CHECK(coarse.intervals() == 8);
  CHECK(l2_norm(coarse) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sup_norm(coarse) == doctest::Approx(1.0).epsilon(1e-14));
  const auto fine = config.g_on(32);
  CHECK(fine.intervals() == 32);
  CHECK(l2_norm(fine) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fine.value_at(0.3).matrix() == coarse.value_at(0.3).matrix());
  CHECK_THROWS_AS(config.g_on(12), ConfigError);
}

TEST_CASE("numerical Jacobian determinants") {
  const auto point = sample_ball_point(MeasureSpec{4, 5.0, 3, 31}, 0);
  const PathMap identity = [](const StepPath& f) { return f; };
  CHECK(std::abs(numerical_jacobian_det(identity, point, 1e-5) - 1.0) <= 1e-10);

  const PathMap scale2 = [](const StepPath& f) { return 2.0 * f; };
  CHECK(numerical_jacobian_det(scale2, point, 1e-5) == doctest::Approx(4096.0).epsilon(1e-9));

  for (std::uint64_t k = 0; k < 5; ++k) {
    const auto f = sample_ball_point(MeasureSpec{4, 5.0, 3, 32}, k);
    const auto g = sample_ball_point(MeasureSpec{4, 1.0, 3, 33}, k);
    const auto inv = jacobian_report("inverse", [](const StepPath& x) { return inverse(x); }, f, 1e-5);
    const auto phi = jacobian_report("phi", [&g](const StepPath& x) { return star_phi(x, g); }, f, 1e-5);
    CHECK(inv.deviation <= 1e-4);
    CHECK(phi.deviation <= 1e-4);
    CHECK(std::abs(phi.determinant - 1.0) <= 1e-4);
    CHECK(inv.base_point.size() == 12);
  }

  CHECK_THROWS_AS(numerical_jacobian_det(identity, StepPath::zero(3, 22), 1e-5), std::invalid_argument);
  CHECK_THROWS_AS(numerical_jacobian_det(identity, point, 0.0), std::invalid_argument);
}

TEST_CASE("verify suite") {
  const auto config = default_config("verify");
  const auto report = run_verify(config);
  CHECK(report.all_passed());
  CHECK(report.checks.size() >= 10);
  for (const auto& c : report.checks) {
    INFO(c.name << " deviation " << c.max_deviation << " threshold " << c.threshold);
    CHECK(c.passed);
  }
  CHECK(report.table().rows.size() == report.checks.size());

  auto faulty = config;
  faulty.fault_exp_scale = 1.01;
  const auto broken = run_verify(faulty);
  CHECK_FALSE(broken.all_passed());
  for (const auto& c : broken.checks) {
    if (c.name == "exp_lipschitz") CHECK_FALSE(c.passed);
  }
}

TEST_CASE("invariance experiment") {
  SUBCASE("zero translation") {
    auto config = small_invariance();
    config.g_norm = 0.0;
    config.g_norm_set = true;
    const auto table = run_invariance(config);
    REQUIRE(table.rows.size() == 2);
    for (std::size_t r = 0; r < 2; ++r) {
      CHECK(table.number(r, "mk_exact") <= 1e-12);
      CHECK(table.number(r, "witness_gap") <= 1e-12);
      CHECK(table.number(r, "escape_fraction") == 0.0);
      CHECK(table.number(r, "mk_baseline") > 0.0);
    }
  }

  SUBCASE("analytic correction bound column") {
    auto config = small_invariance();
    config.n_list = {16, 256};
    config.samples = 8;
    config.escape_samples = 20;
    config.refinement = 1;
    const auto table = run_invariance(config);
    CHECK(table.number(0, "correction_bound") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(table.number(1, "correction_bound") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(table.number(0, "R_N") == doctest::Approx(8.0).epsilon(1e-12));
    for (std::size_t r = 0; r < 2; ++r) {
      CHECK(table.number(r, "correction_mean") <= table.number(r, "correction_bound"));
      CHECK(table.number(r, "witness_gap") <= table.number(r, "mk_exact") + 1e-9);
    }
  }

  SUBCASE("bit-identical across thread counts") {
    auto config = small_invariance();
    const auto reference = render(run_invariance(config), config, OutputFormat::Csv);
    for (int threads : {4, 8}) {
      config.threads = threads;
      CHECK(render(run_invariance(config), config, OutputFormat::Csv) == reference);
    }
  }
}

TEST_CASE("concentration experiment") {
  SUBCASE("abelian case centres on a right angle") {
    auto config = default_config("concentration");
    config.dim = 2;
    config.n_list = {64, 256};
    config.samples = 400;
    const auto table = run_concentration(config);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      CHECK(std::abs(table.number(r, "median_angle") - std::numbers::pi / 2) <= 0.05);
      CHECK(table.number(r, "identity_max_dev") <= 1e-10);
    }
  }

  SUBCASE("columns and identity") {
    auto config = default_config("concentration");
    config.n_list = {16, 64};
    config.samples = 200;
    const auto table = run_concentration(config);
    for (const char* name : {"tail_0.1", "tail_0.15", "tail_0.2", "decay_rate_0.15"}) {
      CHECK_NOTHROW(table.column(name));
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      CHECK(table.number(r, "identity_max_dev") <= 1e-10);
      CHECK(table.number(r, "tail_0.2") <= table.number(r, "tail_0.1"));
    }
  }
}

TEST_CASE("report output") {
  auto config = small_invariance();
  config.n_list = {8};
  const auto table = run_invariance(config);

  const auto csv = render(table, config, OutputFormat::Csv);
  std::istringstream lines(csv);
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(header.rfind("N,R_N,samples,mk_exact", 0) == 0);
  CHECK(header.find("config_hash") != std::string::npos);
  CHECK(header.find("version") != std::string::npos);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));

  const auto jsonl = render(table, config, OutputFormat::Json);
  const auto j = nlohmann::json::parse(jsonl.substr(0, jsonl.find('\n')));
  CHECK(j.at("N") == 8);
  CHECK(j.at("experiment") == "invariance");
  CHECK(j.at("seed") == config.seed);
  CHECK(j.contains("units"));
  CHECK(j.at("mk_exact").get<double>() == table.number(0, "mk_exact"));

  Table bad;
  bad.columns = {{"a", ""}};
  CHECK_THROWS_AS(bad.add_row({std::int64_t{1}, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(table.column("missing"), std::out_of_range);
}

TEST_CASE("jacobian experiment") {
  auto config = default_config("jacobian");
  config.jacobian_points = 3;
  const auto reports = run_jacobian(config);
  CHECK(reports.size() == 6);
  for (const auto& r : reports) CHECK(r.deviation <= 1e-4);
  CHECK(jacobian_table(reports).rows.size() == 6);

  config.jacobian_intervals = 30;
  CHECK_THROWS_AS(run_jacobian(config), ConfigError);
}
