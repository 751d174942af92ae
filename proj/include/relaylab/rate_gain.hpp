#pragma once

// Inversion of outage-versus-rate curves and rate gain between two systems
// at equal outage probability.

#include <cstdint>
#include <optional>
#include <vector>

#include "relaylab/capacity.hpp"
#include "relaylab/channel.hpp"
#include "relaylab/power_alloc.hpp"

namespace relaylab::rate_gain {

/// How the power allocation is chosen for every candidate rate.
enum class BetaPolicy {
  Fixed,     // the system's `fixed_beta`
  Distance,  // closed-form distance-only optimum (K = 1), R-independent
  Numeric,   // numeric argmin of the outage at each candidate rate
};

struct SystemConfig {
  capacity::Scheme scheme = capacity::Scheme::DT;
  channel::NetworkGeometry geometry;
  double snr = 1.0;
  BetaPolicy policy = BetaPolicy::Distance;
  std::optional<capacity::PowerAllocation> fixed_beta;
};

struct SolverOptions {
  double r_min = 1e-6;
  double r_max = 20.0;
  double rate_tolerance = 1e-3;  // bisection stops once the bracket is narrower
  int max_iterations = 200;
  bool force_monte_carlo = false;
  std::uint64_t mc_trials = 10'000'000;
  std::uint64_t numeric_mc_trials = 100'000;  // per candidate in Numeric policy without closed form
  std::uint64_t master_seed = 1;
  unsigned workers = 0;
  bool record_trace = false;
  power_alloc::SearchOptions search;
};

struct Bracket {
  double r_lo;
  double r_hi;
  double p_lo;
  double p_hi;
};

struct RateSolve {
  double epsilon = 0.0;
  double rate = 0.0;
  double residual = 0.0;  // |p_out(rate) - epsilon|
  double p_out = 0.0;
  int iterations = 0;
  bool monte_carlo = false;
  std::vector<Bracket> trace;
};

/// Scheme parameters of `system` at target rate `rate`.
capacity::SchemeParams params_at(const SystemConfig& system, double rate);

/// Power allocation used by `system` at `rate`.
capacity::PowerAllocation beta_at(const SystemConfig& system, double rate,
                                  const SolverOptions& options = {});

/// Outage probability of `system` at `rate`: closed form when available,
/// otherwise Monte Carlo with `options.mc_trials` trials and a pinned seed.
double outage_at(const SystemConfig& system, double rate, const SolverOptions& options = {});

/// Bisection for the rate whose outage equals `epsilon`. Throws
/// BracketingError naming [p_out(r_min), p_out(r_max)] if unreachable.
RateSolve rate_at_outage(const SystemConfig& system, double epsilon,
                         const SolverOptions& options = {});

/// R_A(epsilon) - R_B(epsilon); negative means B sustains the higher rate.
double rate_gain(const SystemConfig& a, const SystemConfig& b, double epsilon,
                 const SolverOptions& options = {});

/// Rate in [r_lo, r_hi] where the outage curves of `a` and `b` cross.
double crossover_rate(const SystemConfig& a, const SystemConfig& b, double r_lo, double r_hi,
                      const SolverOptions& options = {});

}  // namespace relaylab::rate_gain
