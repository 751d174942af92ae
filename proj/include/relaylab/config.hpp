#pragma once

// Flat `key = value` experiment configuration. A written manifest is itself a
// valid configuration, so every run can be replayed from it.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relaylab/capacity.hpp"
#include "relaylab/rate_gain.hpp"

namespace relaylab::config {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { Fig2, Fig3, Fig4, Table1, Sweep };

std::string_view to_string(Experiment experiment);
Experiment parse_experiment(std::string_view name);

enum class OutageMethod { ClosedForm, MonteCarlo };

struct ExperimentConfig {
  Experiment experiment = Experiment::Fig2;
  double alpha = 3.0;
  double d_sr = 0.5;
  std::vector<double> d_sr_grid;
  std::vector<capacity::Scheme> schemes;
  double rate = 2.0;
  std::vector<double> rate_grid;
  std::vector<double> beta0_grid;
  double snr_db = 0.0;
  double snr = 1.0;  // linear, derived from snr_db once at parse time
  std::vector<double> snr_db_grid;
  std::vector<double> snr_grid;  // linear
  std::vector<double> epsilons;
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t master_seed = 1;
  rate_gain::BetaPolicy beta_policy = rate_gain::BetaPolicy::Distance;
  OutageMethod method = OutageMethod::ClosedForm;
  bool mc_check = false;
  double rate_tolerance = 1e-3;
  double r_max = 20.0;
  std::string output;
  unsigned workers = 0;  // not part of the reproducibility contract
};

/// Parses `key = value` lines (`#` starts a comment). Unknown keys, bad
/// numbers and invalid grids raise ConfigError.
std::map<std::string, std::string> parse_key_values(std::string_view text);

/// Applies per-experiment defaults, then `values`. `experiment_override`
/// (e.g. the CLI subcommand) wins over an `experiment` key in the file.
ExperimentConfig make_config(const std::map<std::string, std::string>& values,
                             const Experiment* experiment_override = nullptr);

ExperimentConfig load_config_file(const std::string& path,
                                  const Experiment* experiment_override = nullptr);

/// Canonical `key = value` text listing every setting that affects output.
std::string echo(const ExperimentConfig& config);

/// Parses "a,b,c" or "start:step:stop"; the result must be non-empty and
/// strictly increasing.
std::vector<double> parse_grid(std::string_view text);

double db_to_linear(double db);

/// Shortest round-trip decimal form of `value` ("nan"/"inf" for non-finite).
std::string format_number(double value);

}  // namespace relaylab::config
