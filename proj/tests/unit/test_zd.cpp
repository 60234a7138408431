#include "doctest.h"

#include <random>

#include "support/oracle.hpp"
#include "zdlab/errors.hpp"
#include "zdlab/markov.hpp"
#include "zdlab/zd.hpp"

using namespace zdlab;

namespace {

const StageGame kPD = canonical_game(CanonicalGame::kPD);
const StageGame kSH = canonical_game(CanonicalGame::kSH);
const StageGame kGC = canonical_game(CanonicalGame::kGC);
const StageGame kBS = canonical_game(CanonicalGame::kBS);

void check_vec(const StrategyVector& got, const Vec4& want, double tol = 1e-12) {
  for (int k = 0; k < 4; ++k) {
    INFO("component ", k + 1, " got ", got[k], " want ", want[k]);
    CHECK(std::abs(got[k] - want[k]) <= tol);
  }
}

// Random extortion spec that is feasible for the game: delta drawn from
// the interval where chi != 1 is possible, chi from its range, phi from
// the interior of its interval.
ExtortionSpec random_spec(const StageGame& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto prm = g.parameters();
  for (;;) {
    double delta;
    if (g.kind() == GameKind::kBattleOfSexes) {
      delta = prm[1];
    } else {
      delta = prm[3] + u(rng) * (prm[0] - prm[3]);
    }
    auto r = extortion_ranges(g, delta);
    if (!r.feasible) continue;
    const double hi = std::isinf(r.upper) ? r.lower + 20.0 : r.upper;
    if (hi - r.lower < 1e-6) continue;
    const double chi = r.lower + (0.02 + 0.96 * u(rng)) * (hi - r.lower);
    if (std::abs(chi - 1.0) < 1e-3) continue;
    auto phi = feasible_phi(g, delta, chi);
    if (!phi.feasible) continue;
    const double top = phi.scale_sign > 0 ? phi.upper : phi.lower;
    return {delta, chi, (0.05 + 0.9 * u(rng)) * top};
  }
}

}  // namespace

TEST_CASE("linear form") {
  check_vec(zd_from_linear(kPD, {0, 0, 0}), {1, 1, 0, 0});
  auto z = extortion_linear({1.0, 10.0, 0.02}, 0.02);
  CHECK(z.alpha == doctest::Approx(0.02));
  CHECK(z.beta == doctest::Approx(-0.2));
  CHECK(z.gamma == doctest::Approx(0.18));
  check_vec(zd_from_linear(kPD, z), {0.64, 0.18, 0.28, 0.0});
  CHECK_THROWS_AS(zd_from_linear(kPD, {1.0, 0.0, 0.0}), InfeasibleError);
}

TEST_CASE("linear form enforces its relation against random opponents") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  int tried = 0;
  while (tried < 40) {
    ZDLinear z{u(rng), u(rng), u(rng)};
    StrategyVector p;
    try {
      p = zd_from_linear(kGC, z);
    } catch (const InfeasibleError&) {
      continue;
    }
    ++tried;
    for (int i = 0; i < 50; ++i) {
      auto r = expected_payoffs(p, StrategyVector(oracle::interior(rng)), kGC);
      if (r.method != PayoffMethod::kDeterminant) continue;
      CHECK(std::abs(z.alpha * r.pi_x + z.beta * r.pi_y + z.gamma) < 1e-9);
    }
  }
}

TEST_CASE("mischief golden vectors") {
  check_vec(synth_mischief(kPD, {1.0, -0.1}), {0.8, 0.6, 0.1, 0.0});
  check_vec(synth_mischief(kSH, {8.0, -0.1}), {0.8, 1.0, 0.8, 0.0});
  check_vec(synth_mischief(kGC, {2.5, -0.1}), {0.65, 0.55, 0.05, 0.25});
}

TEST_CASE("mischief ranges") {
  auto pd = mischief_range(kPD);
  CHECK(pd.feasible);
  CHECK(pd.lower == 1.0);
  CHECK(pd.upper == 3.0);
  auto gc = mischief_range(kGC);
  CHECK(gc.lower == 2.0);
  CHECK(gc.upper == 6.0);
  CHECK_FALSE(mischief_range(kBS).feasible);
  CHECK_FALSE(mischief_range(kBS, Player::kY).feasible);
  try {
    synth_mischief(kBS, {2.0});
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(std::string(e.what()).find("no feasible values") != std::string::npos);
  }
  CHECK_THROWS_AS(synth_mischief(kPD, {4.0}), InfeasibleError);
  CHECK_THROWS_AS(synth_mischief(kPD, {1.0, -0.5}), InfeasibleError);
}

TEST_CASE("mischief fixes the opponent's payoff for any opponent") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto* g : {&kPD, &kSH, &kGC}) {
    auto range = mischief_range(*g);
    for (int trial = 0; trial < 10; ++trial) {
      const double target = range.lower + u(rng) * (range.upper - range.lower);
      StrategyVector p;
      try {
        p = synth_mischief(*g, {target});
      } catch (const InfeasibleError&) {
        continue;  // target on a degenerate endpoint
      }
      double lo = 1e300, hi = -1e300;
      for (int i = 0; i < 100; ++i) {
        auto r = expected_payoffs(p, StrategyVector(oracle::interior(rng)), *g);
        lo = std::min(lo, r.pi_y);
        hi = std::max(hi, r.pi_y);
      }
      CHECK(hi - lo < 1e-9);
      CHECK(std::abs(lo - target) < 1e-9);
    }
  }
}

TEST_CASE("extortion golden vectors") {
  check_vec(synth_extortion(kPD, {1.0, 10.0, 0.02}), {0.64, 0.18, 0.28, 0.0});
  check_vec(synth_extortion(kGC, {2.0, 10.0, 0.02}), {0.28, 0.0, 0.1, 0.36});
  check_vec(synth_extortion(kBS, {1.0, 2.0, -0.1}), {1.0, 1.0, 0.0, 0.6});
  check_vec(synth_extortion(kSH, {8.0, 10.0, 0.01}), {0.82, 0.92, 0.8, 0.0});
}

TEST_CASE("extortion ranges") {
  auto gc = extortion_ranges(kGC, 0.0);
  CHECK(gc.feasible);
  CHECK(gc.lower == doctest::Approx(1.0));
  CHECK(gc.upper == doctest::Approx(3.5));
  auto pd = extortion_ranges(kPD, 1.0);
  CHECK(pd.lower == doctest::Approx(1.0));
  CHECK(std::isinf(pd.upper));
  auto bs = extortion_ranges(kBS, 1.0);
  CHECK(bs.feasible);
  CHECK(bs.scale_sign == -1);
  CHECK(bs.lower == doctest::Approx(0.5));
  CHECK(bs.upper == doctest::Approx(2.0));
}

TEST_CASE("phi intervals") {
  auto pd = feasible_phi(kPD, 1.0, 10.0);
  CHECK(pd.lower <= 0.02);
  CHECK(pd.upper >= 0.02);
  auto sh = feasible_phi(kSH, 8.0, 10.0);
  CHECK(sh.lower <= 0.01);
  CHECK(sh.upper >= 0.01);
  // chi = 1: the far end of the interval is tit-for-tat.
  auto fair = feasible_phi(kPD, 2.0, 1.0);
  check_vec(synth_extortion(kPD, {2.0, 1.0, fair.upper}), {1, 0, 1, 0});
  CHECK(default_scale(pd) == doctest::Approx(pd.upper / 2));
}

TEST_CASE("infeasible extortion reports the violated bound") {
  auto bad = extortion_violations(kGC, {0.0, 5.0, std::nullopt});
  REQUIRE_FALSE(bad.empty());
  bool has_bound = false;
  for (const auto& m : bad) has_bound |= m.find("3.5") != std::string::npos;
  CHECK(has_bound);
  CHECK_THROWS_AS(synth_extortion(kGC, {0.0, 5.0}), InfeasibleError);
  CHECK_FALSE(extortion_violations(kPD, {1.0, 10.0, 0.5}).empty());
  CHECK_FALSE(extortion_violations(kPD, {1.0, -2.0}).empty());
  CHECK_FALSE(extortion_violations(kPD, {4.0, 2.0}).empty());
}

TEST_CASE("recover_zd") {
  auto r = recover_zd(kPD, StrategyVector({0.64, 0.18, 0.28, 0.0}));
  REQUIRE(r);
  CHECK(*r->chi == doctest::Approx(10.0));
  CHECK(*r->delta == doctest::Approx(1.0));
  r = recover_zd(kPD, StrategyVector::tit_for_tat());
  REQUIRE(r);
  CHECK(*r->chi == doctest::Approx(1.0));
  CHECK_FALSE(recover_zd(kPD, StrategyVector::randomizer()));
  r = recover_zd(kPD, StrategyVector({0.8, 0.6, 0.1, 0.0}));
  REQUIRE(r);
  CHECK(*r->target == doctest::Approx(1.0));
}

TEST_CASE("extortion round trip and enforcement on canonical games") {
  std::mt19937_64 rng(14);
  for (const auto* g : {&kPD, &kSH, &kGC, &kBS}) {
    CAPTURE(g->name());
    for (int i = 0; i < 500; ++i) {
      auto spec = random_spec(*g, rng);
      auto p = synth_extortion(*g, spec);
      auto r = recover_zd(*g, p);
      REQUIRE(r);
      CHECK(std::abs(*r->chi - spec.chi) < 1e-9 * std::max(1.0, spec.chi));
      CHECK(std::abs(*r->delta - spec.delta) < 1e-9);
      if (i % 10 == 0) {
        auto z = enforced_linear(*g, spec);
        for (int j = 0; j < 50; ++j) {
          auto e = expected_payoffs(p, StrategyVector(oracle::interior(rng)), *g);
          CHECK(std::abs(z.alpha * e.pi_x + z.beta * e.pi_y + z.gamma) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("range endpoints touch the boundary of the unit cube") {
  // delta = P, chi = (T - delta)/(S - delta) in GC gives p3 = p4 = 0.
  auto p = synth_extortion(kGC, {0.0, 3.5});
  CHECK(p[2] == 0.0);
  CHECK(p[3] == 0.0);
  std::mt19937_64 rng(15);
  for (const auto* g : {&kPD, &kSH, &kGC}) {
    for (int i = 0; i < 50; ++i) {
      auto spec = random_spec(*g, rng);
      auto phi = feasible_phi(*g, spec.delta, spec.chi);
      spec.phi = phi.scale_sign > 0 ? phi.upper : phi.lower;
      auto q = synth_extortion(*g, spec);
      // Some component reaches the bound opposite to its base value.
      const bool touches = q[0] == 0.0 || q[1] == 0.0 || q[2] == 1.0 || q[3] == 1.0;
      CHECK(touches);
    }
  }
}

TEST_CASE("battle of sexes extortion with chi > 1 needs C = L") {
  auto unequal = StageGame::battle_of_sexes(5, 2, 1, 3);
  for (double delta = 0.0; delta <= 6.0; delta += 0.05) {
    auto r = extortion_ranges(unequal, delta);
    if (!r.feasible) continue;
    CHECK(r.upper <= 1.0 + 1e-12);
  }
  CHECK(extortion_ranges(kBS, 1.0).upper > 1.5);

  // chi < 1 survives for C > L when L <= delta <= C.
  auto r = extortion_ranges(unequal, 1.5);
  REQUIRE(r.feasible);
  CHECK(r.lower == doctest::Approx(3.0 / 7.0));
  auto p = synth_extortion(unequal, {1.5, 0.6});
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    auto e = expected_payoffs(p, StrategyVector(oracle::interior(rng)), unequal);
    CHECK(std::abs((e.pi_x - 1.5) - 0.6 * (e.pi_y - 1.5)) < 1e-9);
  }
}

TEST_CASE("Y-side synthesis mirrors X") {
  std::mt19937_64 rng(16);
  auto q = synth_extortion(kPD, {1.0, 10.0, 0.02}, Player::kY);
  check_vec(q, {0.64, 0.18, 0.28, 0.0});
  auto m = synth_mischief(kGC, {2.5, -0.1}, Player::kY);
  auto bs = synth_extortion(kBS, {1.0, 2.0}, Player::kY);
  for (int i = 0; i < 50; ++i) {
    StrategyVector p(oracle::interior(rng));
    auto r = expected_payoffs(p, q, kPD);
    CHECK(std::abs((r.pi_y - 1.0) - 10.0 * (r.pi_x - 1.0)) < 1e-9);
    r = expected_payoffs(p, m, kGC);
    CHECK(std::abs(r.pi_x - 2.5) < 1e-9);
    r = expected_payoffs(p, bs, kBS);
    CHECK(std::abs((r.pi_y - 1.0) - 2.0 * (r.pi_x - 1.0)) < 1e-9);
  }
  // Seen from Y the preferred outcome is dd, so phi comes out positive.
  auto z = enforced_linear(kBS, ExtortionSpec{1.0, 2.0}, Player::kY);
  CHECK(z.beta > 0.0);
  for (int i = 0; i < 20; ++i) {
    auto r = expected_payoffs(StrategyVector(oracle::interior(rng)), bs, kBS);
    CHECK(std::abs(z.alpha * r.pi_x + z.beta * r.pi_y + z.gamma) < 1e-9);
  }
}
