#include "relaylab/power_alloc.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "relaylab/error.hpp"
#include "relaylab/outage.hpp"

namespace relaylab::power_alloc {

using capacity::PowerAllocation;

namespace {

double distance_ratio_power(double d_sr, double d_rd, double alpha) {
  if (!(d_sr > 0.0) || !(d_rd > 0.0)) throw InvalidArgument("distances must be positive");
  return std::pow(d_rd / d_sr, alpha);
}

class CountingObjective {
 public:
  CountingObjective(const OutageObjective& f, std::size_t budget) : f_(f), budget_(budget) {}

  double operator()(const PowerAllocation& beta) {
    ++count_;
    const double p = f_(beta);
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream os;
      os << "outage objective returned " << p << ", outside [0, 1]";
      throw InvalidArgument(os.str());
    }
    return p;
  }

  bool exhausted() const noexcept { return count_ >= budget_; }
  std::size_t count() const noexcept { return count_; }

 private:
  const OutageObjective& f_;
  std::size_t budget_;
  std::size_t count_ = 0;
};

AllocationResult golden_section(CountingObjective& f, const SearchOptions& opt) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = opt.min_fraction;
  double hi = 1.0 - opt.min_fraction;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(PowerAllocation::single_relay(x1));
  double f2 = f(PowerAllocation::single_relay(x2));

  bool exhausted = false;
  while (hi - lo > opt.golden_tolerance) {
    if (f.exhausted()) {
      exhausted = true;
      break;
    }
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(PowerAllocation::single_relay(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(PowerAllocation::single_relay(x2));
    }
  }
  const double best = f1 <= f2 ? x1 : x2;
  return {PowerAllocation::single_relay(best), std::min(f1, f2), Method::Numeric, f.count(),
          exhausted};
}

// Completes the first K components with beta_K = 1 - sum; empty if infeasible.
std::vector<double> complete(const std::vector<double>& head, double min_fraction) {
  std::vector<double> beta = head;
  const double rest = 1.0 - std::accumulate(head.begin(), head.end(), 0.0);
  beta.push_back(rest);
  for (double b : beta) {
    if (b < min_fraction) return {};
  }
  return beta;
}

PowerAllocation normalized(std::vector<double> beta) {
  // Rounding in 1 - sum can leave |sum - 1| at a few ulps; push it into the last entry.
  const double head = std::accumulate(beta.begin(), beta.end() - 1, 0.0);
  beta.back() = 1.0 - head;
  return PowerAllocation(std::move(beta));
}

AllocationResult simplex_refinement(int n_relays, CountingObjective& f, const SearchOptions& opt) {
  const int dims = n_relays + 1;
  const int steps = static_cast<int>(std::lround(1.0 / opt.coarse_step));
  const double span = 1.0 - dims * opt.min_fraction;
  if (steps < 1 || !(span > 0.0)) throw InvalidArgument("invalid simplex search options");

  std::vector<double> best;
  double best_p = 2.0;
  bool exhausted = false;

  // Coarse lattice: all compositions of `steps` into `dims` parts, mapped into
  // the shrunken simplex so every component is at least min_fraction.
  std::vector<int> parts(static_cast<std::size_t>(dims), 0);
  const auto visit = [&](auto&& self, int index, int remaining) -> void {
    if (exhausted) return;
    if (index == dims - 1) {
      parts[static_cast<std::size_t>(index)] = remaining;
      std::vector<double> beta(static_cast<std::size_t>(dims));
      for (int i = 0; i < dims; ++i) {
        beta[static_cast<std::size_t>(i)] =
            opt.min_fraction + span * parts[static_cast<std::size_t>(i)] / steps;
      }
      const PowerAllocation candidate = normalized(beta);
      const double p = f(candidate);
      if (p < best_p) {
        best_p = p;
        best.assign(candidate.values().begin(), candidate.values().end());
      }
      exhausted = f.exhausted();
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      parts[static_cast<std::size_t>(index)] = v;
      self(self, index + 1, remaining - v);
    }
  };
  visit(visit, 0, steps);

  double step = opt.coarse_step;
  const int reach = static_cast<int>(std::lround(opt.refine_factor));
  while (!exhausted && step >= opt.final_step) {
    step /= opt.refine_factor;
    const std::vector<double> center = best;
    std::vector<int> offset(static_cast<std::size_t>(n_relays), -reach);
    while (true) {
      std::vector<double> head(center.begin(), center.end() - 1);
      for (int i = 0; i < n_relays; ++i) {
        head[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)] * step;
      }
      const auto beta = complete(head, opt.min_fraction);
      if (!beta.empty()) {
        const PowerAllocation candidate = normalized(beta);
        const double p = f(candidate);
        if (p < best_p) {
          best_p = p;
          best.assign(candidate.values().begin(), candidate.values().end());
        }
        if (f.exhausted()) {
          exhausted = true;
          break;
        }
      }
      int i = 0;
      while (i < n_relays && ++offset[static_cast<std::size_t>(i)] > reach) {
        offset[static_cast<std::size_t>(i)] = -reach;
        ++i;
      }
      if (i == n_relays) break;
    }
  }
  return {PowerAllocation(best), best_p, Method::Numeric, f.count(), exhausted};
}

}  // namespace

double beta_opt_mh_closed(double d_sr, double d_rd, double alpha) {
  const double x = distance_ratio_power(d_sr, d_rd, alpha);
  return 1.0 / (1.0 + std::sqrt(x));
}

double amr_large_ratio_term(double x) {
  if (!(x >= 0.0)) throw InvalidArgument("ratio must be non-negative");
  if (x == 0.0) return 0.0;
  // sqrt(x^2 + 2x) = sqrt(x) sqrt(x + 2) avoids overflow of x^2.
  return -2.0 * x / (x + std::sqrt(x) * std::sqrt(x + 2.0));
}

double beta_opt_amr_closed(double d_sr, double d_rd, double alpha) {
  const double x = distance_ratio_power(d_sr, d_rd, alpha);
  return 0.5 * (2.0 + amr_large_ratio_term(x));
}

AllocationResult beta_opt_numeric(int n_relays, const OutageObjective& objective,
                                  const SearchOptions& options) {
  if (n_relays < 1) throw InvalidArgument("power allocation search needs at least one relay");
  if (!(options.min_fraction > 0.0) || (n_relays + 1) * options.min_fraction >= 1.0) {
    throw InvalidArgument("min_fraction must be positive and leave room on the simplex");
  }
  CountingObjective counted(objective, options.max_evaluations);
  if (n_relays == 1) return golden_section(counted, options);
  return simplex_refinement(n_relays, counted, options);
}

AllocationResult beta_opt_closed_objective(const channel::NetworkGeometry& geometry,
                                           const capacity::SchemeParams& params,
                                           const SearchOptions& options) {
  if (params.scheme == capacity::Scheme::DT) {
    throw InvalidArgument("direct transmission has no power allocation to optimise");
  }
  if (!outage::has_closed_form(params)) {
    throw Unsupported("no closed-form outage for AMR with K != 1");
  }
  return beta_opt_numeric(
      params.n_relays,
      [&](const PowerAllocation& beta) { return outage::outage_closed(geometry, beta, params); },
      options);
}

}  // namespace relaylab::power_alloc
