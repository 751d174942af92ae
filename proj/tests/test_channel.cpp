#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "relaylab/channel.hpp"
#include "relaylab/error.hpp"

using namespace relaylab;
using namespace relaylab::channel;

TEST_CASE("mean gain follows d^-alpha with unit constant") {
  CHECK(mean_gain(1.0, 3) == 1.0);
  CHECK(mean_gain(0.5, 3) == 8.0);
  CHECK(mean_gain(0.2, 3) == doctest::Approx(125.0).epsilon(1e-14));
  CHECK_THROWS_AS(mean_gain(0.0, 3), InvalidArgument);
  CHECK_THROWS_AS(mean_gain(-1.0, 3), InvalidArgument);
}

TEST_CASE("single relay line geometry") {
  const auto g = NetworkGeometry::single_relay_line(0.3, 3);
  CHECK(g.n_relays() == 1);
  CHECK(g.destination() == 2);
  CHECK(g.distance({0, 1}) == 0.3);
  CHECK(g.distance({1, 2}) == 1.0 - 0.3);
  CHECK(g.distance({0, 2}) == 1.0);
  CHECK(g.mean_gain({0, 2}) == 1.0);

  CHECK_THROWS_AS(NetworkGeometry::single_relay_line(0.0, 3), InvalidArgument);
  CHECK_THROWS_AS(NetworkGeometry::single_relay_line(1.0, 3), InvalidArgument);
  CHECK_THROWS_AS(NetworkGeometry::single_relay_line(0.5, 1.5), InvalidArgument);
  CHECK_THROWS_AS(NetworkGeometry::single_relay_line(0.5, 6.5), InvalidArgument);
  CHECK_NOTHROW(NetworkGeometry::single_relay_line(0.5, 2.0));
  CHECK_THROWS_AS(g.distance({2, 0}), InvalidArgument);
}

TEST_CASE("general line geometry and explicit distances") {
  const double pos[] = {0.25, 0.5, 0.75};
  const auto g = NetworkGeometry::line(pos, 4);
  CHECK(g.n_relays() == 3);
  CHECK(g.distance({0, 4}) == 1.0);
  CHECK(g.distance({1, 3}) == doctest::Approx(0.5));
  const double bad[] = {0.5, 0.4};
  CHECK_THROWS_AS(NetworkGeometry::line(bad, 3), InvalidArgument);

  CHECK_THROWS_AS(NetworkGeometry(1, {{{0, 5}, 1.0}}, 3), InvalidArgument);
  CHECK_THROWS_AS(NetworkGeometry(1, {{{0, 1}, -1.0}}, 3), InvalidArgument);
  CHECK_THROWS_AS(NetworkGeometry(-1, {}, 3), InvalidArgument);
}

TEST_CASE("scheme pair sets have the documented sizes") {
  for (int k = 1; k <= 5; ++k) {
    CHECK(multi_hop_pairs(k).size() == static_cast<std::size_t>(k + 1));
    CHECK(multi_route_pairs(k).size() == static_cast<std::size_t>(2 * k + 1));
    CHECK(direct_pairs(k).front() == NodePair{0, k + 1});
  }
  const auto amr = multi_route_pairs(2);
  const std::vector<NodePair> expected = {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}};
  CHECK(amr == expected);
}

TEST_CASE("sampling is a pure function of the seed") {
  const auto g = NetworkGeometry::single_relay_line(0.5, 3);
  const auto pairs = multi_route_pairs(1);
  const auto a = sample(g, pairs, {42, 7});
  const auto b = sample(g, pairs, {42, 7});
  CHECK(a == b);
  CHECK(a.size() == 3);

  // Trial 1000 does not depend on having drawn trials 0..999 first.
  const auto late_first = sample(g, pairs, {42, 1000});
  for (std::uint64_t t = 0; t < 1000; ++t) (void)sample(g, pairs, {42, t});
  CHECK(sample(g, pairs, {42, 1000}) == late_first);

  CHECK_FALSE(sample(g, pairs, {43, 7}) == a);
  CHECK_FALSE(sample(g, pairs, {42, 8}) == a);
}

TEST_CASE("sampling rejects unknown pairs and sample lookups fail cleanly") {
  const auto g = NetworkGeometry::single_relay_line(0.5, 3);
  const std::vector<NodePair> bogus = {{0, 3}};
  CHECK_THROWS_AS(sample(g, bogus, {1, 0}), InvalidArgument);
  const auto s = sample(g, multi_hop_pairs(1), {1, 0});
  CHECK(s.contains({0, 1}));
  CHECK_FALSE(s.contains({0, 2}));
  CHECK_THROWS_AS(s.gain(0, 2), InvalidArgument);
  CHECK_THROWS_AS(ChannelSample(1, {{{0, 1}, -0.5}}), InvalidArgument);
}

TEST_CASE("uniform variates lie in (0, 1]") {
  for (std::uint64_t t = 0; t < 100000; ++t) {
    const double u = uniform01({9, t}, {0, 1});
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
  }
}

TEST_CASE("gains at distance d are unit-distance gains scaled by d^-alpha") {
  const std::map<NodePair, double> unit = {{{0, 1}, 1.0}};
  const std::map<NodePair, double> near = {{{0, 1}, 0.5}};
  const NetworkGeometry g1(0, unit, 3);
  const NetworkGeometry g2(0, near, 3);
  const std::vector<NodePair> pairs = {{0, 1}};
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const double a = sample(g1, pairs, {5, t}).gain(0, 1);
    const double b = sample(g2, pairs, {5, t}).gain(0, 1);
    REQUIRE(b == a * 8.0);
  }
}

TEST_CASE("empirical moments of the exponential gain") {
  const auto g = NetworkGeometry::single_relay_line(0.5, 3);  // sigma^2(0,1) = 8
  const std::vector<NodePair> pairs = {{0, 1}};
  const std::uint64_t n = 1'000'000;
  double sum = 0.0;
  std::uint64_t below_median = 0;
  const double median = 8.0 * std::log(2.0);
  for (std::uint64_t t = 0; t < n; ++t) {
    const double x = sample(g, pairs, {2024, t}).gain(0, 1);
    sum += x;
    below_median += x < median ? 1 : 0;
  }
  CHECK(std::abs(sum / n - 8.0) <= 3.0 * 8.0 / 1000.0);
  CHECK(std::abs(static_cast<double>(below_median) / n - 0.5) <= 0.0016);
}

TEST_CASE("Kolmogorov-Smirnov statistic against the exponential CDF") {
  const auto g = NetworkGeometry::single_relay_line(0.2, 3);  // sigma^2(1,2) = 0.8^-3
  const std::vector<NodePair> pairs = {{1, 2}};
  const double sigma2 = std::pow(0.8, -3.0);
  const std::size_t n = 100000;
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = sample(g, pairs, {77, t}).gain(1, 2);
  std::sort(x.begin(), x.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = 1.0 - std::exp(-x[i] / sigma2);
    d = std::max({d, cdf - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf});
  }
  // Asymptotic 1% critical value 1.628 / sqrt(n).
  CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
}
