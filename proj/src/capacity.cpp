#include "relaylab/capacity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "relaylab/error.hpp"

namespace relaylab::capacity {

using channel::ChannelSample;

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::DT:
      return "DT";
    case Scheme::MH:
      return "MH";
    case Scheme::AMR:
      return "AMR";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "DT") return Scheme::DT;
  if (upper == "MH") return Scheme::MH;
  if (upper == "AMR") return Scheme::AMR;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "' (expected DT, MH or AMR)");
}

void SchemeParams::validate() const {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("rate must be positive");
  if (!(snr > 0.0) || !std::isfinite(snr)) throw InvalidArgument("SNR must be positive");
  if (n_relays < 0) throw InvalidArgument("relay count must be non-negative");
  if (scheme != Scheme::DT && n_relays < 1) {
    throw InvalidArgument(std::string(to_string(scheme)) + " needs at least one relay");
  }
}

PowerAllocation::PowerAllocation(std::vector<double> beta) : beta_(std::move(beta)) {
  if (beta_.empty()) throw InvalidArgument("power allocation needs at least one component");
  for (double b : beta_) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw InvalidArgument("power fractions must be finite and non-negative");
    }
  }
  const double sum = std::accumulate(beta_.begin(), beta_.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "power fractions must sum to 1, got " << sum;
    throw InvalidArgument(os.str());
  }
}

PowerAllocation PowerAllocation::equal(int n_relays) {
  if (n_relays < 0) throw InvalidArgument("relay count must be non-negative");
  return PowerAllocation(std::vector<double>(static_cast<std::size_t>(n_relays) + 1,
                                             1.0 / static_cast<double>(n_relays + 1)));
}

PowerAllocation PowerAllocation::single_relay(double beta0) {
  if (!(beta0 >= 0.0 && beta0 <= 1.0)) throw InvalidArgument("beta0 must lie in [0, 1]");
  return PowerAllocation({beta0, 1.0 - beta0});
}

DecodeEvent DecodeOutcome::event() const noexcept {
  if (decoded.empty()) return DecodeEvent::NoneDecoded;
  if (static_cast<int>(decoded.size()) == n_relays) return DecodeEvent::AllDecoded;
  return DecodeEvent::SomeDecoded;
}

bool DecodeOutcome::contains(int relay) const {
  return std::binary_search(decoded.begin(), decoded.end(), relay);
}

double subblock_capacity(double x, int n_relays) {
  if (!(x >= 0.0)) throw InvalidArgument("effective SNR must be non-negative");
  if (n_relays < 0) throw InvalidArgument("relay count must be non-negative");
  const double blocks = static_cast<double>(n_relays + 1);
  return std::log1p(blocks * x) / (blocks * std::numbers::ln2);
}

double gamma_k(const SchemeParams& params) {
  params.validate();
  const double blocks = static_cast<double>(params.effective_relays() + 1);
  return std::expm1(blocks * params.rate * std::numbers::ln2) / (blocks * params.snr);
}

double capacity_dt(double g_sd, const SchemeParams& params) {
  if (!(g_sd >= 0.0)) throw InvalidArgument("channel gain must be non-negative");
  return subblock_capacity(g_sd * params.snr, 0);
}

namespace {

void check_shapes(const ChannelSample& sample, const PowerAllocation& beta,
                  const SchemeParams& params, Scheme expected) {
  params.validate();
  if (params.scheme != expected) {
    throw InvalidArgument("parameters are for " + std::string(to_string(params.scheme)) +
                          ", expected " + std::string(to_string(expected)));
  }
  if (beta.n_relays() != params.n_relays || sample.n_relays() != params.n_relays) {
    throw InvalidArgument("relay count mismatch between sample, allocation and parameters");
  }
}

}  // namespace

double capacity_mh(const ChannelSample& sample, const PowerAllocation& beta,
                   const SchemeParams& params) {
  check_shapes(sample, beta, params, Scheme::MH);
  const int K = params.n_relays;
  double weakest = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= K; ++k) {
    weakest = std::min(weakest, beta[k] * sample.gain(k, k + 1));
  }
  return subblock_capacity(weakest * params.snr, K);
}

DecodeOutcome decode_set(const ChannelSample& sample, const PowerAllocation& beta,
                         const SchemeParams& params) {
  if (beta.n_relays() != params.n_relays) {
    throw InvalidArgument("relay count mismatch between allocation and parameters");
  }
  const double gamma = gamma_k(params);
  DecodeOutcome outcome{params.n_relays, {}};
  for (int k = 1; k <= params.n_relays; ++k) {
    if (beta[0] * sample.gain(0, k) >= gamma) outcome.decoded.push_back(k);
  }
  return outcome;
}

double amr_effective_gain(const ChannelSample& sample, const PowerAllocation& beta,
                          const DecodeOutcome& outcome) {
  const int dst = outcome.n_relays + 1;
  const double direct = sample.gain(0, dst);
  if (outcome.event() == DecodeEvent::NoneDecoded) return direct;
  double total = beta[0] * direct;
  for (int k : outcome.decoded) total += beta[k] * sample.gain(k, dst);
  return total;
}

double capacity_amr(const ChannelSample& sample, const PowerAllocation& beta,
                    const SchemeParams& params) {
  check_shapes(sample, beta, params, Scheme::AMR);
  const DecodeOutcome outcome = decode_set(sample, beta, params);
  return subblock_capacity(amr_effective_gain(sample, beta, outcome) * params.snr,
                           params.n_relays);
}

}  // namespace relaylab::capacity
