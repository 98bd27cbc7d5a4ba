// pathgroup: experiment and verification driver.
//
//   pathgroup verify        [--config FILE] [--seed S] [--threads N] [--format csv|json] [--out FILE]
//   pathgroup invariance    ...
//   pathgroup concentration ...
//   pathgroup jacobian      ...

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pathgroup/harness/config.hpp"
#include "pathgroup/harness/experiments.hpp"
#include "pathgroup/harness/report.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> format;
  std::optional<std::string> out;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--config", opts.config_path, "Experiment config file (key = value)");
  sub->add_option("--seed", opts.seed, "Override the config seed");
  sub->add_option("--threads", opts.threads, "Worker threads (affects speed only)");
  sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", opts.out, "Output path (default: stdout)");
}

pathgroup::harness::ExperimentConfig resolve(const std::string& experiment, const CommonOptions& opts) {
  using namespace pathgroup::harness;
  ExperimentConfig config = default_config(experiment);
  if (!opts.config_path.empty()) config = load_config(opts.config_path, config);
  config.experiment = experiment;
  if (opts.seed) config.seed = *opts.seed;
  if (opts.threads) config.threads = *opts.threads;
  if (opts.format) config.format = parse_format(*opts.format);
  if (opts.out) config.output = *opts.out;
  config.validate();
  return config;
}

void emit(const pathgroup::harness::ExperimentConfig& config, const pathgroup::harness::Table& table) {
  using namespace pathgroup::harness;
  const Provenance provenance = provenance_for(config);
  if (config.output.empty()) {
    write_table(std::cout, table, provenance, config.format);
    return;
  }
  std::ofstream out(config.output);
  if (!out) throw std::runtime_error("cannot open output file '" + config.output + "'");
  write_table(out, table, provenance, config.format);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pathgroup::harness;
  CLI::App app{"Path-group measure experiments and identity checks"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  auto* invariance = app.add_subcommand("invariance", "Asymptotic right-invariance table");
  auto* concentration = app.add_subcommand("concentration", "Angle concentration table");
  auto* jacobian = app.add_subcommand("jacobian", "Jacobian determinants of the inverse and phi maps");
  for (auto* sub : {verify, invariance, concentration, jacobian}) add_common(sub, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      const auto config = resolve("verify", opts);
      const VerifyReport report = run_verify(config);
      emit(config, report.table());
      for (const auto& c : report.checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << "  max_dev=" << c.max_deviation
                  << "  threshold=" << c.threshold << '\n';
      }
      return report.all_passed() ? 0 : 1;
    }
    if (invariance->parsed()) {
      const auto config = resolve("invariance", opts);
      emit(config, run_invariance(config));
      return 0;
    }
    if (concentration->parsed()) {
      const auto config = resolve("concentration", opts);
      emit(config, run_concentration(config));
      return 0;
    }
    if (jacobian->parsed()) {
      const auto config = resolve("jacobian", opts);
      emit(config, jacobian_table(run_jacobian(config)));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
