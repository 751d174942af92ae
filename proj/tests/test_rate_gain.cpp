#include <cmath>

#include "doctest.h"
#include "relaylab/error.hpp"
#include "relaylab/outage.hpp"
#include "relaylab/rate_gain.hpp"

using relaylab::BracketingError;
using relaylab::InvalidArgument;
using relaylab::Unsupported;
namespace capacity = relaylab::capacity;
namespace channel = relaylab::channel;
using namespace relaylab::rate_gain;
using capacity::Scheme;
using channel::NetworkGeometry;

namespace {

const double kSnr30dB = 1000.0;

SystemConfig system(Scheme scheme, double d_sr = 0.5, double snr = kSnr30dB,
                    BetaPolicy policy = BetaPolicy::Distance) {
  return {scheme, NetworkGeometry::single_relay_line(d_sr, 3), snr, policy, std::nullopt};
}

// Analytic inversions used as oracles.
double dt_rate_oracle(double eps, double snr) { return std::log2(1.0 - snr * std::log1p(-eps)); }

double mh_rate_oracle(double eps, double snr, double d_sr, double alpha) {
  const double d_rd = 1.0 - d_sr;
  const double b = 1.0 / (1.0 + std::sqrt(std::pow(d_rd / d_sr, alpha)));
  const double s = 1.0 / (b * std::pow(d_sr, -alpha)) + 1.0 / ((1 - b) * std::pow(d_rd, -alpha));
  const double gamma = -std::log1p(-eps) / s;
  return std::log2(1.0 + 2.0 * snr * gamma) / 2.0;
}

}  // namespace

TEST_CASE("DT inversion at the median matches the analytic rate") {
  SolverOptions opt;
  opt.rate_tolerance = 1e-12;
  const auto dt = system(Scheme::DT);
  const auto solve = rate_at_outage(dt, 0.5, opt);
  CHECK(solve.rate == doctest::Approx(std::log2(1.0 + kSnr30dB * std::log(2.0))).epsilon(1e-10));
  CHECK(solve.residual < 1e-9);
  CHECK_FALSE(solve.monte_carlo);
}

TEST_CASE("round trip: solving at p_out(R*) returns R*") {
  for (auto scheme : {Scheme::DT, Scheme::MH, Scheme::AMR}) {
    for (double r_star : {0.7, 2.3, 4.1}) {
      const auto s = system(scheme, 0.4, 100.0);
      const double p = outage_at(s, r_star);
      const auto solve = rate_at_outage(s, p);
      CHECK(std::abs(solve.rate - r_star) <= 1e-3);
    }
  }
}

TEST_CASE("bisection keeps epsilon bracketed") {
  SolverOptions opt;
  opt.record_trace = true;
  const auto solve = rate_at_outage(system(Scheme::AMR), 1e-2, opt);
  REQUIRE(solve.trace.size() == static_cast<std::size_t>(solve.iterations) + 1);
  for (const auto& b : solve.trace) {
    CHECK(b.p_lo <= 1e-2);
    CHECK(1e-2 <= b.p_hi);
    CHECK(b.r_lo < b.r_hi);
  }
  CHECK(solve.trace.back().r_hi - solve.trace.back().r_lo < 1e-3);
}

TEST_CASE("rate gain identities") {
  const auto dt = system(Scheme::DT);
  const auto mh = system(Scheme::MH);
  const auto amr = system(Scheme::AMR);
  CHECK(rate_gain(amr, amr, 0.05) == 0.0);
  for (double eps : {0.1, 0.01, 0.001}) {
    CHECK(rate_gain(amr, mh, eps) == -rate_gain(mh, amr, eps));
    CHECK(rate_gain(mh, dt, eps) == -rate_gain(dt, mh, eps));
  }
}

TEST_CASE("MH over DT rate gain against analytic inversions") {
  const auto dt = system(Scheme::DT);
  const auto mh = system(Scheme::MH);
  for (double eps : {0.1, 0.01, 0.001}) {
    const double oracle = mh_rate_oracle(eps, kSnr30dB, 0.5, 3) - dt_rate_oracle(eps, kSnr30dB);
    CHECK(std::abs(rate_gain(mh, dt, eps) - oracle) <= 1e-3);
  }
  // Frozen from the analytic oracle above (30 dB, d_sr = 0.5, alpha = 3).
  CHECK(std::abs(rate_gain(mh, dt, 0.1) - (-2.3715)) <= 2e-3);
  CHECK(std::abs(rate_gain(mh, dt, 0.001) - 0.1609) <= 2e-3);
}

TEST_CASE("MH and DT outage curves cross at log2(3)") {
  // Equal outage iff (4^R - 1) / 4 = 2^R - 1, i.e. 2^R = 3, for d_sr = 0.5 at any SNR.
  for (double snr : {10.0, kSnr30dB}) {
    const double r = crossover_rate(system(Scheme::MH, 0.5, snr), system(Scheme::DT, 0.5, snr), 0.5, 3.0);
    CHECK(std::abs(r - std::log2(3.0)) <= 1e-3);
  }
  CHECK_THROWS_AS(crossover_rate(system(Scheme::MH), system(Scheme::DT), 2.0, 3.0), BracketingError);
}

TEST_CASE("unreachable epsilon reports the attainable range") {
  const auto dt = system(Scheme::DT);
  try {
    (void)rate_at_outage(dt, 1e-15);
    FAIL("expected a bracketing error");
  } catch (const BracketingError& e) {
    CHECK(e.attainable_lo() > 1e-15);
    CHECK(e.attainable_hi() == doctest::Approx(1.0));
  }
  SolverOptions narrow;
  narrow.r_max = 1.0;
  CHECK_THROWS_AS(rate_at_outage(dt, 0.5, narrow), BracketingError);
  CHECK_THROWS_AS(rate_at_outage(dt, 0.0), InvalidArgument);
  CHECK_THROWS_AS(rate_at_outage(dt, 1.0), InvalidArgument);
}

TEST_CASE("Monte Carlo inversion with a pinned seed tracks the closed form") {
  SolverOptions opt;
  opt.force_monte_carlo = true;
  opt.mc_trials = 200'000;
  opt.master_seed = 12;
  const auto dt = system(Scheme::DT);
  const auto mc_solve = rate_at_outage(dt, 0.1, opt);
  CHECK(mc_solve.monte_carlo);
  CHECK(std::abs(mc_solve.rate - dt_rate_oracle(0.1, kSnr30dB)) < 0.02);
  // Same seed, same answer.
  CHECK(rate_at_outage(dt, 0.1, opt).rate == mc_solve.rate);
}

TEST_CASE("beta policies") {
  // MH: per-rate numeric optimum coincides with the distance-only fraction.
  const auto distance = system(Scheme::MH, 0.3);
  const auto numeric = system(Scheme::MH, 0.3, kSnr30dB, BetaPolicy::Numeric);
  for (double r : {1.0, 3.0}) {
    CHECK(std::abs(beta_at(numeric, r)[0] - beta_at(distance, r)[0]) < 1e-3);
  }
  CHECK(std::abs(rate_gain(numeric, distance, 0.01)) <= 1e-3);

  // AMR: re-optimising can only lower outage, so the sustained rate cannot drop.
  const auto amr_d = system(Scheme::AMR, 0.3, 10.0);
  const auto amr_n = system(Scheme::AMR, 0.3, 10.0, BetaPolicy::Numeric);
  CHECK(rate_gain(amr_n, amr_d, 0.01) >= -1e-3);

  auto fixed = system(Scheme::MH);
  fixed.policy = BetaPolicy::Fixed;
  CHECK_THROWS_AS(beta_at(fixed, 1.0), InvalidArgument);
  fixed.fixed_beta = capacity::PowerAllocation{0.2, 0.8};
  CHECK(beta_at(fixed, 1.0)[0] == 0.2);

  const double pos[] = {0.3, 0.6};
  const SystemConfig two{Scheme::AMR, NetworkGeometry::line(pos, 3), 10.0, BetaPolicy::Distance,
                         std::nullopt};
  CHECK_THROWS_AS(beta_at(two, 1.0), Unsupported);
}

TEST_CASE("two-relay AMR inversion falls back to Monte Carlo") {
  const double pos[] = {0.3, 0.6};
  SystemConfig two{Scheme::AMR, NetworkGeometry::line(pos, 3), 100.0, BetaPolicy::Fixed,
                   capacity::PowerAllocation::equal(2)};
  SolverOptions opt;
  opt.mc_trials = 100'000;
  opt.rate_tolerance = 1e-2;
  const auto solve = rate_at_outage(two, 0.1, opt);
  CHECK(solve.monte_carlo);
  CHECK(solve.residual < 0.01);
}
