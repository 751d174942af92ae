// relaylab: reproduce relay-network outage and power-allocation experiments.
//
// Usage:
//   relaylab <fig2|fig3|fig4|table1|sweep> [--config FILE] [--seed N] [--out FILE]
//            [--trials N] [--workers N]
//
// Writes the CSV to --out (default <experiment>.csv) and a replayable
// manifest next to it. Exit codes: 0 success, 2 config error, 3 solver failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "relaylab/config.hpp"
#include "relaylab/error.hpp"
#include "relaylab/experiments.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<unsigned> workers;
  std::string out;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw relaylab::config::ConfigError("cannot write '" + path + "'");
  out << text;
}

int run(relaylab::config::Experiment experiment, const Overrides& o) {
  using namespace relaylab;
  config::ExperimentConfig cfg =
      o.config_path.empty() ? config::make_config({}, &experiment)
                            : config::load_config_file(o.config_path, &experiment);
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.trials) {
    if (*o.trials < 1) throw config::ConfigError("--trials must be at least 1");
    cfg.n_trials = *o.trials;
  }
  if (o.workers) cfg.workers = *o.workers;
  if (!o.out.empty()) cfg.output = o.out;
  if (cfg.output.empty()) cfg.output = std::string(config::to_string(experiment)) + ".csv";

  const auto start = std::chrono::steady_clock::now();
  const auto table = experiments::run(cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_file(cfg.output, experiments::to_csv(table));
  write_file(experiments::manifest_path(cfg.output), experiments::manifest(cfg, table, wall));
  std::cerr << "wrote " << cfg.output << " (" << table.rows.size() << " rows) and "
            << experiments::manifest_path(cfg.output) << "\n";
  for (const auto& f : table.failures) std::cerr << "unsolved: " << f << "\n";
  return table.ok() ? 0 : kSolverError;
}

}  // namespace

int main(int argc, char** argv) {
  using relaylab::config::Experiment;
  CLI::App app{"Outage and power-allocation experiments for cooperative relay networks"};
  app.require_subcommand(1);

  Overrides o;
  std::optional<Experiment> chosen;
  for (auto e : {Experiment::Fig2, Experiment::Fig3, Experiment::Fig4, Experiment::Table1,
                 Experiment::Sweep}) {
    const std::string name(relaylab::config::to_string(e));
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", o.config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "master seed (overrides config)");
    sub->add_option("--out", o.out, "CSV output path (overrides config)");
    sub->add_option("--trials", o.trials, "Monte Carlo trials (overrides config)");
    sub->add_option("--workers", o.workers, "worker threads; results do not depend on it");
    sub->callback([&chosen, e] { chosen = e; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    return run(*chosen, o);
  } catch (const relaylab::config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const relaylab::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const relaylab::BracketingError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const relaylab::Unsupported& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  }
}
