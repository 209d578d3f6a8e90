// qhs: run hidden-subgroup simulation experiments from a JSON config.
//
//   qhs <alg-r|alg-circle|alg-subspace|dual-shor-sweep> --config PATH
//       [--seed N] [--trials N] [--out DIR] [--format json|csv] [--workers N] [--spectrum]
//   qhs replay --config RUN_LOG
//
// Exit codes: 0 success, 2 config error, 3 runtime error.

#include "qhs/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<unsigned> workers;
  bool spectrum = false;
};

int run_algorithm(const std::string& subcommand, const RunOptions& opts) {
  qhs::ExperimentConfig cfg = qhs::parse_config(opts.config);
  if (cfg.algorithm() != subcommand) {
    throw qhs::ConfigError({"config is for '" + cfg.algorithm() + "' but subcommand is '" + subcommand + "'"});
  }
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.trials) cfg.trials = *opts.trials;
  if (opts.out) cfg.output_dir = *opts.out;
  if (opts.format) cfg.format = *opts.format == "csv" ? qhs::ReportFormat::csv : qhs::ReportFormat::json;
  if (opts.workers) cfg.workers = *opts.workers;
  qhs::validate(cfg);

  const qhs::ExperimentResult result = qhs::run_experiment(cfg);
  if (opts.spectrum) {
    const auto path = cfg.output_dir / "spectrum.csv";
    std::ofstream out(path);
    if (!out) throw qhs::RuntimeError("cannot write '" + path.string() + "'");
    qhs::write_distribution_csv(qhs::experiment_spectrum(cfg), out);
  }
  std::cout << qhs::summary_to_json(result.summary).dump(2) << '\n';
  std::cerr << "run log: " << result.run_log.string() << "\nreport:  " << result.report.string() << '\n';
  return 0;
}

int run_replay(const std::string& log_path) {
  const qhs::ReplayReport report = qhs::replay_run_log(log_path);
  std::cout << "replayed " << report.replayed << " records, " << report.mismatched_trials.size() << " mismatched\n";
  for (std::uint64_t t : report.mismatched_trials) std::cout << "  mismatch: trial " << t << '\n';
  return report.mismatched_trials.empty() ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden-subgroup algorithm simulator and experiment harness"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string replay_log;
  for (const char* name : {"alg-r", "alg-circle", "alg-subspace", "dual-shor-sweep"}) {
    auto* sub = app.add_subcommand(name, std::string("run a batch of ") + name + " trials");
    sub->add_option("--config", opts.config, "experiment config (JSON file, or inline JSON)")->required();
    sub->add_option("--seed", opts.seed, "override master_seed");
    sub->add_option("--trials", opts.trials, "override trials");
    sub->add_option("--out", opts.out, "override output_dir");
    sub->add_option("--format", opts.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", opts.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--spectrum", opts.spectrum, "also write spectrum.csv for trial 0's oracle");
  }
  auto* replay = app.add_subcommand("replay", "re-execute every record of a run log and compare");
  replay->add_option("--config", replay_log, "run log (run.jsonl) to replay")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (replay->parsed()) return run_replay(replay_log);
    return run_algorithm(app.get_subcommands().front()->get_name(), opts);
  } catch (const qhs::ConfigError& e) {
    std::cerr << "config error:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
