#pragma once

// Network geometry, path-loss mean gains and counter-based sampling of
// exponential channel power gains |h_ij|^2.
//
// Node numbering: 0 is the source, 1..K are the relays and K+1 is the
// destination.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace relaylab::channel {

struct NodePair {
  int from = 0;
  int to = 0;

  auto operator<=>(const NodePair&) const = default;
};

std::string to_string(const NodePair& pair);

/// Mean power gain of a link of length `d`: d^-alpha (unit proportionality
/// constant). Throws InvalidArgument for d <= 0.
double mean_gain(double d, double alpha);

class NetworkGeometry {
 public:
  static constexpr double kMinAlpha = 2.0;
  static constexpr double kMaxAlpha = 6.0;

  NetworkGeometry(int n_relays, std::map<NodePair, double> distances, double alpha);

  /// Source, one relay at distance d_sr and destination on a unit segment,
  /// so d_rd = 1 - d_sr and d_sd = 1. Requires 0 < d_sr < 1.
  static NetworkGeometry single_relay_line(double d_sr, double alpha);

  /// Source at 0, destination at 1 and relays at the given strictly
  /// increasing positions inside (0, 1). All pairwise distances are filled.
  static NetworkGeometry line(std::span<const double> relay_positions, double alpha);

  int n_relays() const noexcept { return n_relays_; }
  int destination() const noexcept { return n_relays_ + 1; }
  double alpha() const noexcept { return alpha_; }
  const std::map<NodePair, double>& distances() const noexcept { return distances_; }

  bool contains(const NodePair& pair) const { return distances_.contains(pair); }
  double distance(const NodePair& pair) const;
  double mean_gain(const NodePair& pair) const;

 private:
  int n_relays_;
  std::map<NodePair, double> distances_;
  double alpha_;
};

/// The K+1 hop pairs (k, k+1) of a multi-hop chain.
std::vector<NodePair> multi_hop_pairs(int n_relays);

/// The 2K+1 pairs of adaptive multi-route: (0,k), (0,K+1), (k,K+1).
std::vector<NodePair> multi_route_pairs(int n_relays);

/// The single source-destination pair (0, K+1).
std::vector<NodePair> direct_pairs(int n_relays);

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// Uniform variate on (0, 1] that depends only on (seed, pair).
double uniform01(const SeedSpec& seed, const NodePair& pair);

/// One draw of channel power gains for a fixed set of node pairs.
class ChannelSample {
 public:
  struct Entry {
    NodePair pair;
    double gain;

    bool operator==(const Entry&) const = default;
  };

  ChannelSample() = default;
  ChannelSample(int n_relays, std::vector<Entry> entries);

  int n_relays() const noexcept { return n_relays_; }
  int destination() const noexcept { return n_relays_ + 1; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  bool contains(const NodePair& pair) const;
  /// Throws InvalidArgument when the pair was not sampled.
  double gain(const NodePair& pair) const;
  double gain(int from, int to) const { return gain(NodePair{from, to}); }

  bool operator==(const ChannelSample&) const = default;

 private:
  int n_relays_ = 0;
  std::vector<Entry> entries_;  // sorted by pair
};

/// Draws g_ij = -sigma_ij^2 * ln(u_ij) for every requested pair. The result
/// is a pure function of (geometry, pairs, seed).
ChannelSample sample(const NetworkGeometry& geometry, std::span<const NodePair> pairs,
                     const SeedSpec& seed);

}  // namespace relaylab::channel
