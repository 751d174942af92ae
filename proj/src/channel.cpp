#include "relaylab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relaylab/error.hpp"

namespace relaylab::channel {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t pair_id(const NodePair& pair) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(pair.from)) << 32) |
         static_cast<std::uint32_t>(pair.to);
}

void check_distance(double d, const char* what) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    std::ostringstream os;
    os << what << " must be a positive finite distance, got " << d;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

std::string to_string(const NodePair& pair) {
  return "(" + std::to_string(pair.from) + "," + std::to_string(pair.to) + ")";
}

double mean_gain(double d, double alpha) {
  check_distance(d, "distance");
  return std::pow(d, -alpha);
}

NetworkGeometry::NetworkGeometry(int n_relays, std::map<NodePair, double> distances, double alpha)
    : n_relays_(n_relays), distances_(std::move(distances)), alpha_(alpha) {
  if (n_relays_ < 0) throw InvalidArgument("relay count must be non-negative");
  if (!(alpha_ >= kMinAlpha && alpha_ <= kMaxAlpha)) {
    std::ostringstream os;
    os << "path-loss exponent " << alpha_ << " outside [" << kMinAlpha << ", " << kMaxAlpha << "]";
    throw InvalidArgument(os.str());
  }
  const int last = destination();
  for (const auto& [pair, d] : distances_) {
    if (pair.from < 0 || pair.to < 0 || pair.from > last || pair.to > last || pair.from == pair.to) {
      throw InvalidArgument("node pair " + to_string(pair) + " does not belong to the network");
    }
    check_distance(d, "distance");
  }
}

NetworkGeometry NetworkGeometry::single_relay_line(double d_sr, double alpha) {
  if (!(d_sr > 0.0 && d_sr < 1.0)) {
    std::ostringstream os;
    os << "source-relay distance must lie in (0, 1), got " << d_sr;
    throw InvalidArgument(os.str());
  }
  const double positions[] = {d_sr};
  return line(positions, alpha);
}

NetworkGeometry NetworkGeometry::line(std::span<const double> relay_positions, double alpha) {
  std::vector<double> x;
  x.reserve(relay_positions.size() + 2);
  x.push_back(0.0);
  for (double p : relay_positions) {
    if (!(p > x.back() && p < 1.0)) {
      throw InvalidArgument("relay positions must be strictly increasing inside (0, 1)");
    }
    x.push_back(p);
  }
  x.push_back(1.0);

  std::map<NodePair, double> distances;
  const int nodes = static_cast<int>(x.size());
  for (int i = 0; i < nodes; ++i) {
    for (int j = i + 1; j < nodes; ++j) {
      // Computed as written so that d_rd == 1 - d_sr bit-for-bit for K = 1.
      distances[{i, j}] = x[j] - x[i];
    }
  }
  return NetworkGeometry(static_cast<int>(relay_positions.size()), std::move(distances), alpha);
}

double NetworkGeometry::distance(const NodePair& pair) const {
  const auto it = distances_.find(pair);
  if (it == distances_.end()) {
    throw InvalidArgument("geometry has no distance for pair " + to_string(pair));
  }
  return it->second;
}

double NetworkGeometry::mean_gain(const NodePair& pair) const {
  return channel::mean_gain(distance(pair), alpha_);
}

std::vector<NodePair> multi_hop_pairs(int n_relays) {
  std::vector<NodePair> pairs;
  for (int k = 0; k <= n_relays; ++k) pairs.push_back({k, k + 1});
  return pairs;
}

std::vector<NodePair> multi_route_pairs(int n_relays) {
  const int dst = n_relays + 1;
  std::vector<NodePair> pairs;
  for (int k = 1; k <= n_relays; ++k) pairs.push_back({0, k});
  pairs.push_back({0, dst});
  for (int k = 1; k <= n_relays; ++k) pairs.push_back({k, dst});
  return pairs;
}

std::vector<NodePair> direct_pairs(int n_relays) { return {{0, n_relays + 1}}; }

double uniform01(const SeedSpec& seed, const NodePair& pair) {
  std::uint64_t h = splitmix64(seed.master_seed);
  h = splitmix64(h ^ seed.trial_index);
  h = splitmix64(h ^ pair_id(pair));
  // 53 random bits mapped onto (0, 1]; u = 0 is excluded so ln(u) is finite.
  return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

ChannelSample::ChannelSample(int n_relays, std::vector<Entry> entries)
    : n_relays_(n_relays), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.pair < b.pair; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!(entries_[i].gain >= 0.0)) {
      throw InvalidArgument("channel gain for " + to_string(entries_[i].pair) +
                            " must be non-negative");
    }
    if (i > 0 && entries_[i - 1].pair == entries_[i].pair) {
      throw InvalidArgument("duplicate pair " + to_string(entries_[i].pair) + " in sample");
    }
  }
}

bool ChannelSample::contains(const NodePair& pair) const {
  return std::binary_search(entries_.begin(), entries_.end(), Entry{pair, 0.0},
                            [](const Entry& a, const Entry& b) { return a.pair < b.pair; });
}

double ChannelSample::gain(const NodePair& pair) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), pair,
                                   [](const Entry& e, const NodePair& p) { return e.pair < p; });
  if (it == entries_.end() || it->pair != pair) {
    throw InvalidArgument("channel sample has no gain for pair " + to_string(pair));
  }
  return it->gain;
}

ChannelSample sample(const NetworkGeometry& geometry, std::span<const NodePair> pairs,
                     const SeedSpec& seed) {
  std::vector<ChannelSample::Entry> entries;
  entries.reserve(pairs.size());
  for (const NodePair& pair : pairs) {
    const double sigma2 = geometry.mean_gain(pair);
    entries.push_back({pair, 0.0 - sigma2 * std::log(uniform01(seed, pair))});
  }
  return ChannelSample(geometry.n_relays(), std::move(entries));
}

}  // namespace relaylab::channel
