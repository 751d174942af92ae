#pragma once

// Outage-minimising power allocation: closed forms for a single relay on a
// line and a numerical minimiser over the probability simplex for any K.

#include <cstddef>
#include <functional>

#include "relaylab/capacity.hpp"
#include "relaylab/channel.hpp"

namespace relaylab::power_alloc {

/// Source fraction 1 / (1 + sqrt((d_rd / d_sr)^alpha)) minimising MH outage.
double beta_opt_mh_closed(double d_sr, double d_rd, double alpha);

/// Source fraction (2 + x - sqrt(x^2 + 2x)) / 2 with x = (d_rd / d_sr)^alpha,
/// the high-SNR AMR optimum. In [0.5, 1].
double beta_opt_amr_closed(double d_sr, double d_rd, double alpha);

/// x - sqrt(x^2 + 2x), which tends to -1 as x grows. Evaluated in the
/// cancellation-free form -2x / (x + sqrt(x^2 + 2x)).
double amr_large_ratio_term(double x);

enum class Method { ClosedForm, Numeric };

struct AllocationResult {
  capacity::PowerAllocation beta;
  double p_out = 1.0;
  Method method = Method::Numeric;
  std::size_t evaluations = 0;
  bool budget_exhausted = false;  // true: `beta` is the incumbent, not a converged optimum
};

struct SearchOptions {
  double min_fraction = 1e-6;       // lower bound on every beta_k
  double golden_tolerance = 1e-5;   // interval width on beta_0 (K = 1)
  double coarse_step = 1.0 / 16.0;  // first simplex lattice (K >= 2)
  double refine_factor = 4.0;
  double final_step = 1e-4;
  std::size_t max_evaluations = 2'000'000;
};

using OutageObjective = std::function<double(const capacity::PowerAllocation&)>;

/// Minimises `objective` over {beta : sum beta = 1, beta_k >= min_fraction}.
/// K = 1: golden-section search on beta_0. K >= 2: simplex lattice refined
/// around the incumbent. Throws InvalidArgument if the objective leaves [0, 1].
AllocationResult beta_opt_numeric(int n_relays, const OutageObjective& objective,
                                  const SearchOptions& options = {});

/// Numeric optimum of the exact closed-form outage (DT has nothing to optimise
/// and is rejected; AMR needs K = 1).
AllocationResult beta_opt_closed_objective(const channel::NetworkGeometry& geometry,
                                           const capacity::SchemeParams& params,
                                           const SearchOptions& options = {});

}  // namespace relaylab::power_alloc
