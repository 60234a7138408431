#include "doctest.h"

#include <random>
#include <sstream>

#include "zdlab/errors.hpp"
#include "zdlab/evolution.hpp"
#include "zdlab/zd.hpp"

using namespace zdlab;

namespace {

const StageGame kPD = canonical_game(CanonicalGame::kPD);

NamedStrategy zd() {
  return {"zd", synth_extortion(kPD, {1.0, 10.0, 0.02})};
}
NamedStrategy allu() { return {"allu", StrategyVector::all_up()}; }
NamedStrategy alld() { return {"alld", StrategyVector::all_down()}; }
NamedStrategy tft() { return {"tft", StrategyVector::tit_for_tat()}; }

}  // namespace

TEST_CASE("payoff tables") {
  auto t = payoff_table({allu(), alld()}, kPD);
  CHECK(t.u[0][0] == doctest::Approx(3));
  CHECK(t.u[0][1] == doctest::Approx(0));
  CHECK(t.u[1][0] == doctest::Approx(5));
  CHECK(t.u[1][1] == doctest::Approx(1));

  t = payoff_table({zd(), tft()}, kPD);
  CHECK(t.u[0][1] == doctest::Approx(1.0));
  CHECK(t.u[0][0] == doctest::Approx(1.0));
  CHECK(t.u[1][1] == doctest::Approx(2.25));  // (3 + 0 + 5 + 1) / 4
  CHECK(t.start_dependent[1][1]);
  CHECK_FALSE(t.start_dependent[0][1]);

  t = payoff_table({zd(), allu()}, kPD);
  CHECK(t.u[0][1] == doctest::Approx(4.125));
  CHECK(t.u[1][0] == doctest::Approx(1.3125));
}

TEST_CASE("single strategy stays put") {
  auto t = payoff_table({tft()}, kPD);
  auto rows = replicator_trajectory({1.0}, t, 0.01, 100);
  for (const auto& r : rows) CHECK(r[0] == 1.0);
}

TEST_CASE("extortioner settles at omega against AllU") {
  auto t = payoff_table({zd(), allu()}, kPD);
  auto w = stable_share_omega(t);
  REQUIRE(w);
  CHECK(*w == doctest::Approx(1.125 / 1.4375).epsilon(1e-12));
  auto rows = replicator_trajectory({0.01, 0.99}, t, 0.01, 200000, 1000);
  CHECK(std::abs(rows.back()[0] - *w) < 1e-6);
  CHECK(rows.back()[1] > 0.2);
}

TEST_CASE("extortioner never gains against TFT") {
  auto t = payoff_table({zd(), tft()}, kPD);
  CHECK_FALSE(stable_share_omega(t));
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int s = 0; s < 10; ++s) {
    const double x0 = s == 0 ? 0.5 : u(rng);
    auto rows = replicator_trajectory({x0, 1 - x0}, t, 0.01, 5000);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i][0] <= rows[i - 1][0] + 1e-15);
    }
  }
}

TEST_CASE("omega boundary and degenerate cases") {
  PayoffTable t;
  t.names = {"a", "b"};
  t.u = {{1, 3}, {2, 3}};
  t.start_dependent.assign(2, std::vector<bool>(2, false));
  auto w = stable_share_omega(t);
  REQUIRE(w);
  CHECK(*w == 0.0);
  t.u = {{2, 1}, {1, 3}};
  CHECK_FALSE(stable_share_omega(t));
  CHECK_THROWS_AS(stable_share_omega(t, 0, 0), InvalidArgument);
}

TEST_CASE("replicator keeps the simplex") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 5);
  PayoffTable t;
  t.names = {"a", "b", "c"};
  t.u.assign(3, std::vector<double>(3));
  for (auto& r : t.u) for (double& v : r) v = u(rng);
  auto rows = replicator_trajectory({0.2, 0.3, 0.5}, t, 0.01, 100000, 100);
  for (const auto& r : rows) {
    double sum = 0;
    for (double v : r) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("mean fitness rises for symmetric two-strategy tables") {
  // Symmetric u (partnership games) make mean fitness a Lyapunov function.
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0, 5), s(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    PayoffTable t;
    t.names = {"a", "b"};
    const double off = u(rng);
    t.u = {{u(rng), off}, {off, u(rng)}};
    const double x0 = s(rng);
    auto rows = replicator_trajectory({x0, 1 - x0}, t, 0.01, 2000);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(mean_fitness(rows[i], t) >= mean_fitness(rows[i - 1], t) - 1e-12);
    }
  }
  auto zt = payoff_table({zd(), tft()}, kPD);
  auto rows = replicator_trajectory({0.5, 0.5}, zt, 0.01, 2000);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(mean_fitness(rows[i], zt) >= mean_fitness(rows[i - 1], zt) - 1e-12);
  }
}

TEST_CASE("population validation and CSV") {
  Population pop{{zd(), allu()}, {0.4, 0.5}};
  CHECK_THROWS_AS(pop.validate(), InvalidArgument);
  pop.shares = {0.4, 0.6};
  CHECK_NOTHROW(pop.validate());
  auto t = payoff_table(pop.strategies, kPD);
  CHECK_THROWS_AS(replicator_trajectory({0.4, 0.6}, t, 0.0, 1), InvalidArgument);
  std::ostringstream os;
  write_trajectory_csv(os, replicator_trajectory({0.4, 0.6}, t, 0.1, 2), 1);
  auto csv = os.str();
  CHECK(csv.rfind("step,share_1,share_2\n0,0.4", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
