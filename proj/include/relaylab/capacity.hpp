#pragma once

// Instantaneous capacities (bit/s/Hz) of direct transmission (DT),
// multi-hop (MH) and adaptive multi-route (AMR) decode-and-forward schemes
// under a network energy constraint with K+1 equal orthogonal subblocks.

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relaylab/channel.hpp"

namespace relaylab::capacity {

enum class Scheme { DT, MH, AMR };

std::string_view to_string(Scheme scheme);
/// Accepts "DT", "MH", "AMR" (case-insensitive).
Scheme parse_scheme(std::string_view name);

struct SchemeParams {
  Scheme scheme = Scheme::DT;
  int n_relays = 0;     // ignored by DT
  double rate = 1.0;    // target end-to-end rate R, bit/s/Hz
  double snr = 1.0;     // linear P / N0

  /// Relay count entering C_K and gamma_K: 0 for DT.
  int effective_relays() const noexcept { return scheme == Scheme::DT ? 0 : n_relays; }
  void validate() const;
};

/// Energy fractions (beta_0, ..., beta_K) with sum 1 and beta_k >= 0.
class PowerAllocation {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit PowerAllocation(std::vector<double> beta);
  PowerAllocation(std::initializer_list<double> beta)
      : PowerAllocation(std::vector<double>(beta)) {}

  static PowerAllocation equal(int n_relays);
  /// (beta0, 1 - beta0) for a single relay.
  static PowerAllocation single_relay(double beta0);

  int n_relays() const noexcept { return static_cast<int>(beta_.size()) - 1; }
  double operator[](int k) const { return beta_[static_cast<std::size_t>(k)]; }
  std::span<const double> values() const noexcept { return beta_; }

  bool operator==(const PowerAllocation&) const = default;

 private:
  std::vector<double> beta_;
};

enum class DecodeEvent { NoneDecoded, SomeDecoded, AllDecoded };

struct DecodeOutcome {
  int n_relays = 0;
  std::vector<int> decoded;  // ascending relay indices in 1..K

  DecodeEvent event() const noexcept;
  bool contains(int relay) const;
};

/// C_K(x) = log2(1 + (K+1) x) / (K+1). Throws for x < 0.
double subblock_capacity(double x, int n_relays);

/// Gain threshold (2^((K+1)R) - 1) / ((K+1) SNR); C_K(g SNR) < R iff g < gamma.
double gamma_k(const SchemeParams& params);

/// Full-block Shannon rate log2(1 + g SNR).
double capacity_dt(double g_sd, const SchemeParams& params);

/// min_k C_K(beta_k g_{k,k+1} SNR).
double capacity_mh(const channel::ChannelSample& sample, const PowerAllocation& beta,
                   const SchemeParams& params);

/// Relay k decodes iff beta_0 g_{0k} >= gamma_K (ties decode).
DecodeOutcome decode_set(const channel::ChannelSample& sample, const PowerAllocation& beta,
                         const SchemeParams& params);

/// Effective destination gain of AMR for a given decode outcome. With no
/// relay decoded this is the bare g_{0,K+1}, otherwise
/// beta_0 g_{0,K+1} + sum_{k decoded} beta_k g_{k,K+1}.
double amr_effective_gain(const channel::ChannelSample& sample, const PowerAllocation& beta,
                          const DecodeOutcome& outcome);

double capacity_amr(const channel::ChannelSample& sample, const PowerAllocation& beta,
                    const SchemeParams& params);

}  // namespace relaylab::capacity
