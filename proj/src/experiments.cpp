#include "relaylab/experiments.hpp"

#include <filesystem>
#include <sstream>

#include "relaylab/error.hpp"
#include "relaylab/outage.hpp"
#include "relaylab/power_alloc.hpp"
#include "relaylab/rate_gain.hpp"

namespace relaylab::experiments {

using capacity::PowerAllocation;
using capacity::Scheme;
using capacity::SchemeParams;
using channel::NetworkGeometry;
using config::ExperimentConfig;
using config::format_number;

namespace {

outage::MonteCarloOptions mc_options(const ExperimentConfig& c) {
  return {c.n_trials, c.master_seed, c.workers};
}

std::string mc_cell(const NetworkGeometry& g, const PowerAllocation& beta, const SchemeParams& p,
                    const ExperimentConfig& c) {
  return format_number(outage::outage_mc(g, beta, p, mc_options(c)).p_hat);
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

CsvTable run_fig2(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"d_sr", "beta_opt_mh", "beta_opt_amr"};
  for (double d : c.d_sr_grid) {
    const double d_rd = 1.0 - d;
    t.rows.push_back({format_number(d),
                      format_number(power_alloc::beta_opt_mh_closed(d, d_rd, c.alpha)),
                      format_number(power_alloc::beta_opt_amr_closed(d, d_rd, c.alpha))});
    t.row_trials.push_back(0);
  }
  return t;
}

CsvTable run_fig3(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"d_sr", "p_mh_equal", "p_mh_opt", "p_amr_equal", "p_amr_opt"};
  if (c.mc_check) {
    for (const char* h : {"p_mh_equal_mc", "p_mh_opt_mc", "p_amr_equal_mc", "p_amr_opt_mc"}) {
      t.header.emplace_back(h);
    }
  }
  const SchemeParams mh{Scheme::MH, 1, c.rate, c.snr};
  const SchemeParams amr{Scheme::AMR, 1, c.rate, c.snr};
  const PowerAllocation equal = PowerAllocation::equal(1);
  for (double d : c.d_sr_grid) {
    const auto g = NetworkGeometry::single_relay_line(d, c.alpha);
    const auto mh_opt =
        PowerAllocation::single_relay(power_alloc::beta_opt_mh_closed(d, g.distance({1, 2}), c.alpha));
    // Exact finite-SNR argmin; the distance-only AMR fraction is a high-SNR optimum.
    const auto amr_opt = power_alloc::beta_opt_closed_objective(g, amr).beta;

    std::vector<std::string> row = {
        format_number(d),
        format_number(outage::outage_mh_closed(g, equal, mh)),
        format_number(outage::outage_mh_closed(g, mh_opt, mh)),
        format_number(outage::outage_amr_closed_k1(g, equal, amr)),
        format_number(outage::outage_amr_closed_k1(g, amr_opt, amr)),
    };
    if (c.mc_check) {
      row.push_back(mc_cell(g, equal, mh, c));
      row.push_back(mc_cell(g, mh_opt, mh, c));
      row.push_back(mc_cell(g, equal, amr, c));
      row.push_back(mc_cell(g, amr_opt, amr, c));
    }
    t.rows.push_back(std::move(row));
    t.row_trials.push_back(c.mc_check ? 4 * c.n_trials : 0);
  }
  return t;
}

CsvTable run_fig4(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"R", "p_dt", "p_mh", "p_amr"};
  if (c.mc_check) {
    for (const char* h : {"p_dt_mc", "p_mh_mc", "p_amr_mc"}) t.header.emplace_back(h);
  }
  const auto g = NetworkGeometry::single_relay_line(c.d_sr, c.alpha);
  const double d_rd = g.distance({1, 2});
  const PowerAllocation dt_beta({1.0});
  const auto mh_beta =
      PowerAllocation::single_relay(power_alloc::beta_opt_mh_closed(c.d_sr, d_rd, c.alpha));
  const auto amr_beta =
      PowerAllocation::single_relay(power_alloc::beta_opt_amr_closed(c.d_sr, d_rd, c.alpha));
  for (double r : c.rate_grid) {
    const SchemeParams dt{Scheme::DT, 0, r, c.snr};
    const SchemeParams mh{Scheme::MH, 1, r, c.snr};
    const SchemeParams amr{Scheme::AMR, 1, r, c.snr};
    std::vector<std::string> row = {
        format_number(r),
        format_number(outage::outage_dt_closed(g, dt)),
        format_number(outage::outage_mh_closed(g, mh_beta, mh)),
        format_number(outage::outage_amr_closed_k1(g, amr_beta, amr)),
    };
    if (c.mc_check) {
      row.push_back(mc_cell(g, dt_beta, dt, c));
      row.push_back(mc_cell(g, mh_beta, mh, c));
      row.push_back(mc_cell(g, amr_beta, amr, c));
    }
    t.rows.push_back(std::move(row));
    t.row_trials.push_back(c.mc_check ? 3 * c.n_trials : 0);
  }
  return t;
}

CsvTable run_table1(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"epsilon", "r_amr_dt", "r_mh_dt"};
  const auto g = NetworkGeometry::single_relay_line(c.d_sr, c.alpha);
  const rate_gain::SystemConfig dt{Scheme::DT, g, c.snr, c.beta_policy, std::nullopt};
  const rate_gain::SystemConfig mh{Scheme::MH, g, c.snr, c.beta_policy, std::nullopt};
  const rate_gain::SystemConfig amr{Scheme::AMR, g, c.snr, c.beta_policy, std::nullopt};

  rate_gain::SolverOptions opt;
  opt.rate_tolerance = c.rate_tolerance;
  opt.r_max = c.r_max;
  opt.force_monte_carlo = c.method == config::OutageMethod::MonteCarlo;
  opt.mc_trials = c.n_trials;
  opt.master_seed = c.master_seed;
  opt.workers = c.workers;

  for (double eps : c.epsilons) {
    std::vector<std::string> row = {format_number(eps)};
    for (const auto* system : {&amr, &mh}) {
      try {
        row.push_back(format_number(rate_gain::rate_gain(*system, dt, eps, opt)));
      } catch (const BracketingError& e) {
        row.emplace_back("nan");
        t.failures.push_back("epsilon " + format_number(eps) + ": " + e.what());
      }
    }
    t.rows.push_back(std::move(row));
    t.row_trials.push_back(opt.force_monte_carlo ? c.n_trials : 0);
  }
  return t;
}

CsvTable run_sweep(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"scheme", "d_sr", "beta0", "R", "snr_db", "p_closed", "p_mc", "std_err", "n_trials"};
  for (Scheme scheme : c.schemes) {
    for (double d : c.d_sr_grid) {
      const auto g = NetworkGeometry::single_relay_line(d, c.alpha);
      for (double b0 : c.beta0_grid) {
        const PowerAllocation beta =
            scheme == Scheme::DT ? PowerAllocation({1.0}) : PowerAllocation::single_relay(b0);
        for (double r : c.rate_grid) {
          for (std::size_t s = 0; s < c.snr_grid.size(); ++s) {
            const SchemeParams p{scheme, scheme == Scheme::DT ? 0 : 1, r, c.snr_grid[s]};
            const auto est = outage::outage_mc(g, beta, p, mc_options(c));
            t.rows.push_back({std::string(capacity::to_string(scheme)), format_number(d),
                              format_number(b0), format_number(r), format_number(c.snr_db_grid[s]),
                              format_number(outage::outage_closed(g, beta, p)),
                              format_number(est.p_hat), format_number(est.std_err),
                              std::to_string(est.n_trials)});
            t.row_trials.push_back(est.n_trials);
          }
        }
      }
    }
  }
  return t;
}

CsvTable run(const ExperimentConfig& c) {
  switch (c.experiment) {
    case config::Experiment::Fig2:
      return run_fig2(c);
    case config::Experiment::Fig3:
      return run_fig3(c);
    case config::Experiment::Fig4:
      return run_fig4(c);
    case config::Experiment::Table1:
      return run_table1(c);
    case config::Experiment::Sweep:
      return run_sweep(c);
  }
  throw InvalidArgument("unknown experiment");
}

std::string manifest(const ExperimentConfig& c, const CsvTable& table, double wall_seconds) {
  std::ostringstream os;
  os << "# " << kToolVersion << "\n";
  os << "# wall_clock_seconds = " << format_number(wall_seconds) << "\n";
  os << "# workers = " << c.workers << " (does not affect results)\n";
  os << config::echo(c);
  for (std::size_t i = 0; i < table.row_trials.size(); ++i) {
    os << "# row " << i << " trials = " << table.row_trials[i] << "\n";
  }
  for (const auto& f : table.failures) os << "# failure: " << f << "\n";
  return os.str();
}

std::string manifest_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".manifest");
  return p.string();
}

}  // namespace relaylab::experiments
