#include <cmath>
#include <string>

#include "doctest.h"
#include "relaylab/experiments.hpp"

using namespace relaylab;
using namespace relaylab::experiments;
using config::make_config;

namespace {

double num(const std::string& cell) { return std::stod(cell); }

std::size_t column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("fig2 midpoint row") {
  const auto t = run(make_config({{"experiment", "fig2"}}));
  CHECK(t.header == std::vector<std::string>{"d_sr", "beta_opt_mh", "beta_opt_amr"});
  REQUIRE(t.rows.size() == 99);
  const auto& mid = t.rows[49];
  CHECK(mid[0] == "0.5");
  CHECK(num(mid[1]) == 0.5);
  CHECK(num(mid[2]) == doctest::Approx((3.0 - std::sqrt(3.0)) / 2.0).epsilon(1e-14));
  CHECK(t.ok());
}

TEST_CASE("fig3 equal-split MH outage and symmetry") {
  const auto t = run(make_config({{"experiment", "fig3"}}));
  const auto c = column(t, "p_mh_equal");
  // gamma = 15 / 20, sum 1 / (beta sigma) = 2 / (0.5 * 8).
  CHECK(num(t.rows[49][c]) == doctest::Approx(1.0 - std::exp(-0.375)).epsilon(1e-12));
  const auto o = column(t, "p_mh_opt");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto j = t.rows.size() - 1 - i;
    CHECK(num(t.rows[i][o]) == doctest::Approx(num(t.rows[j][o])).epsilon(1e-9));
    CHECK(num(t.rows[i][o]) <= num(t.rows[i][c]) + 1e-15);
    CHECK(num(t.rows[i][column(t, "p_amr_opt")]) <= num(t.rows[i][column(t, "p_amr_equal")]) + 1e-15);
  }
}

TEST_CASE("fig3 Monte Carlo check columns") {
  const auto t = run(make_config({{"experiment", "fig3"},
                                  {"d_sr_grid", "0.3,0.6"},
                                  {"mc_check", "true"},
                                  {"n_trials", "200000"}}));
  REQUIRE(t.header.size() == 9);
  for (const auto& row : t.rows) {
    for (std::size_t k = 1; k <= 4; ++k) {
      const double p = num(row[k]);
      const double se = std::sqrt(p * (1 - p) / 200000.0);
      CHECK(std::abs(num(row[k + 4]) - p) <= 4 * se);
    }
  }
  CHECK(t.row_trials.front() == 800000);
}

TEST_CASE("fig4 curves are monotone and MH crosses DT between 1 and 2") {
  const auto t = run(make_config({{"experiment", "fig4"}}));
  REQUIRE(t.rows.size() == 80);
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(num(t.rows[i][k]) >= num(t.rows[i - 1][k]));
  }
  CHECK(num(t.rows[9][2]) < num(t.rows[9][1]));    // R = 1
  CHECK(num(t.rows[19][2]) > num(t.rows[19][1]));  // R = 2
}

TEST_CASE("table1 closed-form run") {
  const auto t = run(make_config({{"experiment", "table1"}}));
  CHECK(t.header == std::vector<std::string>{"epsilon", "r_amr_dt", "r_mh_dt"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.ok());
  // MH column against the analytic inversion frozen in the rate tests.
  CHECK(std::abs(num(t.rows[0][2]) - (-2.3715)) <= 2e-3);
  CHECK(std::abs(num(t.rows[2][2]) - 0.1609) <= 2e-3);
}

TEST_CASE("unsolvable table rows become nan and are reported") {
  const auto t = run(make_config({{"experiment", "table1"}, {"epsilons", "1e-300,0.1"}}));
  CHECK(t.rows[0][1] == "nan");
  CHECK_FALSE(t.ok());
  CHECK(t.rows[1][1] != "nan");
}

TEST_CASE("sweep columns and determinism across worker counts") {
  auto c = make_config({{"experiment", "sweep"}, {"n_trials", "50000"}, {"master_seed", "4"}});
  c.workers = 1;
  const auto one = to_csv(run(c));
  c.workers = 5;
  const auto t = run(c);
  CHECK(to_csv(t) == one);
  CHECK(t.rows.size() == 3 * 3 * 1 * 2 * 1);
  CHECK(t.header.back() == "n_trials");
  for (const auto& row : t.rows) {
    const double se = num(row[7]);
    CHECK(std::abs(num(row[6]) - num(row[5])) <= 5 * se + 1e-12);
  }
}

TEST_CASE("csv text format") {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "2"}, {"3", "4"}};
  CHECK(to_csv(t) == "a,b\n1,2\n3,4\n");
}

TEST_CASE("manifest replays to the same output") {
  const auto c = make_config({{"experiment", "sweep"}, {"n_trials", "20000"}, {"d_sr_grid", "0.4"}});
  const auto t = run(c);
  const auto m = manifest(c, t, 1.25);
  CHECK(m.rfind("# relaylab", 0) == 0);
  const auto replay = make_config(config::parse_key_values(m));
  CHECK(config::echo(replay) == config::echo(c));
  CHECK(to_csv(run(replay)) == to_csv(t));
  CHECK(m.find("# row 0 trials = 20000") != std::string::npos);

  CHECK(manifest_path("out/fig2.csv") == "out/fig2.manifest");
  CHECK(manifest_path("table") == "table.manifest");
}
