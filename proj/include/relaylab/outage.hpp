#pragma once

// Outage-region membership, Monte Carlo outage estimation and exact
// closed-form outage probabilities under exponential channel power gains.

#include <cstdint>

#include "relaylab/capacity.hpp"
#include "relaylab/channel.hpp"

namespace relaylab::outage {

struct OutageEstimate {
  double p_hat = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t outages = 0;
  double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / n)
};

/// Node pairs that `params.scheme` observes in a network of `n_relays` relays.
std::vector<channel::NodePair> scheme_pairs(capacity::Scheme scheme, int n_relays);

/// True iff the scheme's instantaneous capacity is below R. Evaluated in
/// threshold form (gain expression against gamma_K), never via logarithms.
/// DT ignores `beta` and reads the (0, K+1) gain of the sample.
bool in_outage_region(const channel::ChannelSample& sample, const capacity::PowerAllocation& beta,
                      const capacity::SchemeParams& params);

struct MonteCarloOptions {
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t master_seed = 1;
  unsigned workers = 0;  // 0 picks std::thread::hardware_concurrency()
};

/// Fraction of seeded trials in outage. Trial t always uses SeedSpec{seed, t},
/// so the estimate does not depend on the number of workers.
OutageEstimate outage_mc(const channel::NetworkGeometry& geometry,
                         const capacity::PowerAllocation& beta,
                         const capacity::SchemeParams& params, const MonteCarloOptions& options);

/// 1 - exp(-gamma_0 / sigma_sd^2).
double outage_dt_closed(const channel::NetworkGeometry& geometry,
                        const capacity::SchemeParams& params);

/// 1 - exp(-gamma_K sum_k 1 / (beta_k sigma_{k,k+1}^2)); exactly 1 if any beta_k is 0.
double outage_mh_closed(const channel::NetworkGeometry& geometry,
                        const capacity::PowerAllocation& beta,
                        const capacity::SchemeParams& params);

/// CDF at `x` of X1 + X2 where Xi are independent exponentials with rates
/// lambda_i. Falls back to the Erlang-2 form when
/// |lambda1 - lambda2| <= 1e-9 max(lambda1, lambda2).
double exp_sum_cdf(double x, double lambda1, double lambda2);

/// Exact AMR outage for one relay:
///   Pr(relay fails) Pr(g_sd < gamma) + Pr(relay decodes) Pr(b0 g_sd + b1 g_rd < gamma).
/// Throws Unsupported for K != 1.
double outage_amr_closed_k1(const channel::NetworkGeometry& geometry,
                            const capacity::PowerAllocation& beta,
                            const capacity::SchemeParams& params);

/// Dispatches to the closed form for the scheme when one exists.
bool has_closed_form(const capacity::SchemeParams& params);
double outage_closed(const channel::NetworkGeometry& geometry,
                     const capacity::PowerAllocation& beta, const capacity::SchemeParams& params);

}  // namespace relaylab::outage
