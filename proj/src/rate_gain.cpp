#include "relaylab/rate_gain.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "relaylab/error.hpp"
#include "relaylab/outage.hpp"

namespace relaylab::rate_gain {

using capacity::PowerAllocation;
using capacity::Scheme;
using capacity::SchemeParams;

SchemeParams params_at(const SystemConfig& system, double rate) {
  SchemeParams params{system.scheme, system.geometry.n_relays(), rate, system.snr};
  if (system.scheme == Scheme::DT) params.n_relays = 0;
  params.validate();
  return params;
}

PowerAllocation beta_at(const SystemConfig& system, double rate, const SolverOptions& options) {
  const int K = system.geometry.n_relays();
  if (system.scheme == Scheme::DT) return PowerAllocation({1.0});

  switch (system.policy) {
    case BetaPolicy::Fixed:
      if (!system.fixed_beta) throw InvalidArgument("fixed power policy without an allocation");
      return *system.fixed_beta;

    case BetaPolicy::Distance: {
      if (K != 1) {
        throw Unsupported("distance-only closed-form allocation exists for one relay only");
      }
      const double d_sr = system.geometry.distance({0, 1});
      const double d_rd = system.geometry.distance({1, 2});
      const double alpha = system.geometry.alpha();
      const double b0 = system.scheme == Scheme::MH
                            ? power_alloc::beta_opt_mh_closed(d_sr, d_rd, alpha)
                            : power_alloc::beta_opt_amr_closed(d_sr, d_rd, alpha);
      return PowerAllocation::single_relay(b0);
    }

    case BetaPolicy::Numeric: {
      const SchemeParams params = params_at(system, rate);
      if (outage::has_closed_form(params)) {
        return power_alloc::beta_opt_closed_objective(system.geometry, params, options.search).beta;
      }
      // Common random numbers: every candidate sees the same channel draws.
      const outage::MonteCarloOptions mc{options.numeric_mc_trials, options.master_seed,
                                         options.workers};
      return power_alloc::beta_opt_numeric(
                 K,
                 [&](const PowerAllocation& beta) {
                   return outage::outage_mc(system.geometry, beta, params, mc).p_hat;
                 },
                 options.search)
          .beta;
    }
  }
  throw InvalidArgument("unknown power policy");
}

namespace {

struct Evaluation {
  double p;
  bool monte_carlo;
};

Evaluation evaluate(const SystemConfig& system, double rate, const SolverOptions& options) {
  const SchemeParams params = params_at(system, rate);
  const PowerAllocation beta = beta_at(system, rate, options);
  if (!options.force_monte_carlo && outage::has_closed_form(params)) {
    return {outage::outage_closed(system.geometry, beta, params), false};
  }
  const outage::MonteCarloOptions mc{options.mc_trials, options.master_seed, options.workers};
  return {outage::outage_mc(system.geometry, beta, params, mc).p_hat, true};
}

}  // namespace

double outage_at(const SystemConfig& system, double rate, const SolverOptions& options) {
  return evaluate(system, rate, options).p;
}

RateSolve rate_at_outage(const SystemConfig& system, double epsilon, const SolverOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  if (!(options.r_min > 0.0 && options.r_max > options.r_min)) {
    throw InvalidArgument("rate bracket must satisfy 0 < r_min < r_max");
  }

  double lo = options.r_min;
  double hi = options.r_max;
  const Evaluation at_lo = evaluate(system, lo, options);
  const Evaluation at_hi = evaluate(system, hi, options);
  double p_lo = at_lo.p;
  double p_hi = at_hi.p;
  if (!(p_lo <= epsilon && epsilon <= p_hi)) {
    std::ostringstream os;
    os << capacity::to_string(system.scheme) << ": outage " << epsilon
       << " not reachable; attainable range over [" << lo << ", " << hi << "] bit/s/Hz is ["
       << p_lo << ", " << p_hi << "]";
    throw BracketingError(os.str(), p_lo, p_hi);
  }

  RateSolve solve;
  solve.epsilon = epsilon;
  solve.monte_carlo = at_lo.monte_carlo;
  if (options.record_trace) solve.trace.push_back({lo, hi, p_lo, p_hi});

  while (hi - lo >= options.rate_tolerance && solve.iterations < options.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double p_mid = evaluate(system, mid, options).p;
    if (p_mid <= epsilon) {
      lo = mid;
      p_lo = p_mid;
    } else {
      hi = mid;
      p_hi = p_mid;
    }
    ++solve.iterations;
    if (options.record_trace) solve.trace.push_back({lo, hi, p_lo, p_hi});
  }

  solve.rate = 0.5 * (lo + hi);
  solve.p_out = evaluate(system, solve.rate, options).p;
  solve.residual = std::abs(solve.p_out - epsilon);
  return solve;
}

double rate_gain(const SystemConfig& a, const SystemConfig& b, double epsilon,
                 const SolverOptions& options) {
  auto solve_b = std::async(std::launch::async, [&] { return rate_at_outage(b, epsilon, options); });
  const RateSolve ra = rate_at_outage(a, epsilon, options);
  const RateSolve rb = solve_b.get();
  return ra.rate - rb.rate;
}

double crossover_rate(const SystemConfig& a, const SystemConfig& b, double r_lo, double r_hi,
                      const SolverOptions& options) {
  if (!(r_lo > 0.0 && r_hi > r_lo)) throw InvalidArgument("invalid crossover bracket");
  const auto diff = [&](double r) { return outage_at(a, r, options) - outage_at(b, r, options); };
  double d_lo = diff(r_lo);
  const double d_hi = diff(r_hi);
  if ((d_lo < 0.0) == (d_hi < 0.0)) {
    std::ostringstream os;
    os << "outage curves of " << capacity::to_string(a.scheme) << " and "
       << capacity::to_string(b.scheme) << " do not cross in [" << r_lo << ", " << r_hi << "]";
    throw BracketingError(os.str(), d_lo, d_hi);
  }
  for (int i = 0; i < options.max_iterations && r_hi - r_lo >= options.rate_tolerance; ++i) {
    const double mid = 0.5 * (r_lo + r_hi);
    const double d_mid = diff(mid);
    if ((d_mid < 0.0) == (d_lo < 0.0)) {
      r_lo = mid;
      d_lo = d_mid;
    } else {
      r_hi = mid;
    }
  }
  return 0.5 * (r_lo + r_hi);
}

}  // namespace relaylab::rate_gain
