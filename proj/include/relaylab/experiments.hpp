#pragma once

// Experiment runners producing CSV tables and replayable run manifests.

#include <cstdint>
#include <string>
#include <vector>

#include "relaylab/config.hpp"

namespace relaylab::experiments {

inline constexpr const char* kToolVersion = "relaylab 1.0.0";

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::uint64_t> row_trials;  // Monte Carlo trials behind each row
  std::vector<std::string> failures;      // rows that could not be solved

  bool ok() const noexcept { return failures.empty(); }
};

/// Comma separated, LF line endings, header first.
std::string to_csv(const CsvTable& table);

CsvTable run_fig2(const config::ExperimentConfig& config);
CsvTable run_fig3(const config::ExperimentConfig& config);
CsvTable run_fig4(const config::ExperimentConfig& config);
CsvTable run_table1(const config::ExperimentConfig& config);
CsvTable run_sweep(const config::ExperimentConfig& config);

CsvTable run(const config::ExperimentConfig& config);

/// Config echo followed by `#` lines with version, wall clock and per-row
/// trial counts. Parsing it back yields the same configuration.
std::string manifest(const config::ExperimentConfig& config, const CsvTable& table,
                     double wall_seconds);

/// `<dir>/<stem>.manifest` next to a CSV path.
std::string manifest_path(const std::string& csv_path);

}  // namespace relaylab::experiments
