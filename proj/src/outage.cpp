#include "relaylab/outage.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "relaylab/error.hpp"

namespace relaylab::outage {

using capacity::PowerAllocation;
using capacity::Scheme;
using capacity::SchemeParams;
using channel::ChannelSample;
using channel::NetworkGeometry;

namespace {

// 1 - exp(-x) without cancellation for small x.
double one_minus_exp_neg(double x) { return -std::expm1(-x); }

void check_relays(const NetworkGeometry& geometry, const PowerAllocation& beta,
                  const SchemeParams& params) {
  params.validate();
  if (params.scheme == Scheme::DT) return;
  if (geometry.n_relays() != params.n_relays || beta.n_relays() != params.n_relays) {
    throw InvalidArgument("relay count mismatch between geometry, allocation and parameters");
  }
}

}  // namespace

std::vector<channel::NodePair> scheme_pairs(Scheme scheme, int n_relays) {
  switch (scheme) {
    case Scheme::DT:
      return channel::direct_pairs(n_relays);
    case Scheme::MH:
      return channel::multi_hop_pairs(n_relays);
    case Scheme::AMR:
      return channel::multi_route_pairs(n_relays);
  }
  return {};
}

bool in_outage_region(const ChannelSample& sample, const PowerAllocation& beta,
                      const SchemeParams& params) {
  const double gamma = capacity::gamma_k(params);
  switch (params.scheme) {
    case Scheme::DT:
      return sample.gain(0, sample.destination()) < gamma;
    case Scheme::MH: {
      if (sample.n_relays() != params.n_relays || beta.n_relays() != params.n_relays) {
        throw InvalidArgument("MH sample does not match the scheme parameters");
      }
      for (int k = 0; k <= params.n_relays; ++k) {
        if (beta[k] * sample.gain(k, k + 1) < gamma) return true;
      }
      return false;
    }
    case Scheme::AMR: {
      if (sample.n_relays() != params.n_relays || beta.n_relays() != params.n_relays) {
        throw InvalidArgument("AMR sample does not match the scheme parameters");
      }
      const auto outcome = capacity::decode_set(sample, beta, params);
      return capacity::amr_effective_gain(sample, beta, outcome) < gamma;
    }
  }
  return true;
}

OutageEstimate outage_mc(const NetworkGeometry& geometry, const PowerAllocation& beta,
                         const SchemeParams& params, const MonteCarloOptions& options) {
  check_relays(geometry, beta, params);
  if (options.n_trials < 1) throw InvalidArgument("Monte Carlo needs at least one trial");

  const auto pairs = scheme_pairs(params.scheme, geometry.n_relays());
  unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, workers);
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, options.n_trials));

  const auto count_range = [&](std::uint64_t first, std::uint64_t last) {
    std::uint64_t outages = 0;
    for (std::uint64_t t = first; t < last; ++t) {
      const auto s = channel::sample(geometry, pairs, {options.master_seed, t});
      outages += in_outage_region(s, beta, params) ? 1 : 0;
    }
    return outages;
  };

  std::vector<std::uint64_t> counts(workers, 0);
  if (workers == 1) {
    counts[0] = count_range(0, options.n_trials);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    const std::uint64_t chunk = options.n_trials / workers;
    const std::uint64_t extra = options.n_trials % workers;
    std::uint64_t first = 0;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t last = first + chunk + (w < extra ? 1 : 0);
      threads.emplace_back([&, w, first, last] { counts[w] = count_range(first, last); });
      first = last;
    }
  }

  OutageEstimate est;
  est.n_trials = options.n_trials;
  for (auto c : counts) est.outages += c;
  est.p_hat = static_cast<double>(est.outages) / static_cast<double>(est.n_trials);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(est.n_trials));
  return est;
}

double outage_dt_closed(const NetworkGeometry& geometry, const SchemeParams& params) {
  if (params.scheme != Scheme::DT) throw InvalidArgument("outage_dt_closed needs DT parameters");
  const double gamma = capacity::gamma_k(params);
  const double sigma2 = geometry.mean_gain({0, geometry.destination()});
  return one_minus_exp_neg(gamma / sigma2);
}

double outage_mh_closed(const NetworkGeometry& geometry, const PowerAllocation& beta,
                        const SchemeParams& params) {
  if (params.scheme != Scheme::MH) throw InvalidArgument("outage_mh_closed needs MH parameters");
  check_relays(geometry, beta, params);
  const double gamma = capacity::gamma_k(params);
  double rate_sum = 0.0;
  for (int k = 0; k <= params.n_relays; ++k) {
    if (beta[k] == 0.0) return 1.0;
    rate_sum += 1.0 / (beta[k] * geometry.mean_gain({k, k + 1}));
  }
  return one_minus_exp_neg(gamma * rate_sum);
}

double exp_sum_cdf(double x, double lambda1, double lambda2) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) throw InvalidArgument("rates must be positive");
  if (!(x > 0.0)) return 0.0;
  if (std::abs(lambda1 - lambda2) <= 1e-9 * std::max(lambda1, lambda2)) {
    const double lx = 0.5 * (lambda1 + lambda2) * x;
    // 1 - (1 + lx) e^{-lx} written as (1 - e^{-lx}) - lx e^{-lx}.
    return one_minus_exp_neg(lx) - lx * std::exp(-lx);
  }
  const double f = (lambda2 * one_minus_exp_neg(lambda1 * x) - lambda1 * one_minus_exp_neg(lambda2 * x)) /
                   (lambda2 - lambda1);
  return std::clamp(f, 0.0, 1.0);
}

double outage_amr_closed_k1(const NetworkGeometry& geometry, const PowerAllocation& beta,
                            const SchemeParams& params) {
  if (params.scheme != Scheme::AMR) throw InvalidArgument("outage_amr_closed_k1 needs AMR parameters");
  if (params.n_relays != 1) {
    throw Unsupported("closed-form AMR outage is only available for one relay; use outage_mc");
  }
  check_relays(geometry, beta, params);
  const double b0 = beta[0];
  const double b1 = beta[1];
  if (!(b0 > 0.0 && b0 < 1.0)) throw InvalidArgument("AMR closed form needs 0 < beta0 < 1");

  const double gamma = capacity::gamma_k(params);
  const double s_sr = geometry.mean_gain({0, 1});
  const double s_sd = geometry.mean_gain({0, 2});
  const double s_rd = geometry.mean_gain({1, 2});

  const double p_fail = one_minus_exp_neg(gamma / (b0 * s_sr));
  const double p_direct = one_minus_exp_neg(gamma / s_sd);
  const double p_combined = exp_sum_cdf(gamma, 1.0 / (b0 * s_sd), 1.0 / (b1 * s_rd));
  return p_fail * p_direct + (1.0 - p_fail) * p_combined;
}

bool has_closed_form(const SchemeParams& params) {
  return params.scheme != Scheme::AMR || params.n_relays == 1;
}

double outage_closed(const NetworkGeometry& geometry, const PowerAllocation& beta,
                     const SchemeParams& params) {
  switch (params.scheme) {
    case Scheme::DT:
      return outage_dt_closed(geometry, params);
    case Scheme::MH:
      return outage_mh_closed(geometry, beta, params);
    case Scheme::AMR:
      return outage_amr_closed_k1(geometry, beta, params);
  }
  return 1.0;
}

}  // namespace relaylab::outage
