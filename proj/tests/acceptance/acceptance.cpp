// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any
// fails. --only <substring> runs a subset.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "support/oracle.hpp"
#include "zdlab/agents.hpp"
#include "zdlab/errors.hpp"
#include "zdlab/evolution.hpp"
#include "zdlab/markov.hpp"
#include "zdlab/response.hpp"
#include "zdlab/sim.hpp"
#include "zdlab/zd.hpp"

using namespace zdlab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

const StageGame kPD = canonical_game(CanonicalGame::kPD);
const StageGame kSH = canonical_game(CanonicalGame::kSH);
const StageGame kGC = canonical_game(CanonicalGame::kGC);
const StageGame kBS = canonical_game(CanonicalGame::kBS);

double max_abs_diff(const Vec4& a, const Vec4& b) {
  double m = 0;
  for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double payoff_bound(const StageGame& g, Player p) {
  return std::max(std::abs(g.min_payoff(p)), std::abs(g.max_payoff(p)));
}

void golden_vectors(Outcome& o) {
  struct Case {
    const char* name;
    StrategyVector got;
    Vec4 want;
  };
  const std::vector<Case> cases = {
      {"PD mischief", synth_mischief(kPD, {1.0, -0.1}), {0.8, 0.6, 0.1, 0.0}},
      {"SH mischief", synth_mischief(kSH, {8.0, -0.1}), {0.8, 1.0, 0.8, 0.0}},
      {"GC mischief", synth_mischief(kGC, {2.5, -0.1}), {0.65, 0.55, 0.05, 0.25}},
      {"PD extortion", synth_extortion(kPD, {1.0, 10.0, 0.02}), {0.64, 0.18, 0.28, 0.0}},
      {"SH extortion", synth_extortion(kSH, {8.0, 10.0, 0.01}), {0.82, 0.92, 0.8, 0.0}},
      {"GC extortion", synth_extortion(kGC, {2.0, 10.0, 0.02}), {0.28, 0.0, 0.1, 0.36}},
      {"BS extortion", synth_extortion(kBS, {1.0, 2.0, -0.1}), {1.0, 1.0, 0.0, 0.6}},
  };
  double worst = 0;
  for (const auto& c : cases) {
    const double d = max_abs_diff(c.got.p(), c.want);
    worst = std::max(worst, d);
    o.expect(d <= 1e-12, c.name);
  }
  o.detail << cases.size() << " vectors, max error " << worst;
}

void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(20240601);
  const std::vector<const StageGame*> games{&kPD, &kSH, &kGC, &kBS};
  double worst_cesaro = 0, worst_oracle = 0;
  int n = 0;
  while (n < 1000) {
    const StrategyVector p(oracle::interior(rng)), q(oracle::interior(rng));
    const StageGame& g = *games[n % 4];
    const auto det = expected_payoffs(p, q, g);
    if (std::abs(det.denominator) < kCrossCheckDenominator) continue;
    ++n;
    const auto c = cesaro_stationary(transition_matrix(p, q), default_initial(p, q));
    const auto s = g.payoff_vectors();
    double cx = 0, cy = 0;
    for (int k = 0; k < 4; ++k) {
      cx += c.distribution[k] * s.sx[k];
      cy += c.distribution[k] * s.sy[k];
    }
    worst_cesaro = std::max({worst_cesaro, std::abs(cx - det.pi_x), std::abs(cy - det.pi_y)});
    // Independent elimination on a hand-built chain, no library code involved.
    const auto m = oracle::transition(p.p(), q.p());
    const auto pi = oracle::stationary(m);
    worst_oracle = std::max({worst_oracle, std::abs(oracle::dot(pi, s.sx) - det.pi_x),
                             std::abs(oracle::dot(pi, s.sy) - det.pi_y)});
  }
  o.expect(worst_cesaro < 1e-9, "determinant vs Cesaro");
  o.expect(worst_oracle < 1e-9, "determinant vs elimination oracle");
  o.detail << n << " pairs, max |det - cesaro| " << worst_cesaro
           << ", max |det - oracle| " << worst_oracle;
}

void enforcement(Outcome& o) {
  std::mt19937_64 rng(77);
  struct Case {
    const StageGame* g;
    ZdSpec spec;
  };
  const std::vector<Case> cases = {
      {&kPD, MischiefSpec{1.0, -0.1}},         {&kSH, MischiefSpec{8.0, -0.1}},
      {&kGC, MischiefSpec{2.5, -0.1}},         {&kPD, ExtortionSpec{1.0, 10.0, 0.02}},
      {&kSH, ExtortionSpec{8.0, 10.0, 0.01}},  {&kGC, ExtortionSpec{2.0, 10.0, 0.02}},
      {&kBS, ExtortionSpec{1.0, 2.0, -0.1}},   {&kPD, ExtortionSpec{1.0, 3.0, std::nullopt}},
      {&kGC, MischiefSpec{4.0, std::nullopt}},
  };
  double worst = 0, worst_spread = 0;
  for (const auto& c : cases) {
    for (Player side : {Player::kX, Player::kY}) {
      StrategyVector zd;
      try {
        zd = synthesize(*c.g, c.spec, side);
      } catch (const InfeasibleError&) {
        if (side == Player::kX) o.expect(false, "X-side synthesis");
        continue;
      }
      const ZDLinear z = enforced_linear(*c.g, c.spec, side);
      double lo = 1e300, hi = -1e300;
      for (int i = 0; i < 100; ++i) {
        const StrategyVector other(oracle::interior(rng));
        const auto r = side == Player::kX ? expected_payoffs(zd, other, *c.g)
                                          : expected_payoffs(other, zd, *c.g);
        worst = std::max(worst, std::abs(z.alpha * r.pi_x + z.beta * r.pi_y + z.gamma));
        const double pinned = side == Player::kX ? r.pi_y : r.pi_x;
        lo = std::min(lo, pinned);
        hi = std::max(hi, pinned);
      }
      if (std::holds_alternative<MischiefSpec>(c.spec)) {
        worst_spread = std::max(worst_spread, hi - lo);
      }
    }
  }
  o.expect(worst < 1e-9, "linear residual");
  o.expect(worst_spread < 1e-9, "mischief spread");
  o.detail << "max residual " << worst << ", max mischief spread " << worst_spread;
}

void figure_batches(Outcome& o) {
  const StrategyVector mischief({0.65, 0.55, 0.05, 0.25});
  const StrategyVector extortion({0.28, 0.0, 0.1, 0.36});
  struct Case {
    const char* name;
    StrategyVector x;
    AgentPtr y;
    double want_x, want_y;
  };
  std::vector<Case> cases;
  cases.push_back({"mischief-random", mischief, make_randomizer(), 3.64, 2.50});
  cases.push_back({"extortion-random", extortion, make_randomizer(), 3.61, 2.16});
  cases.push_back({"extortion-tft", extortion, make_tft(), 2.00, 2.00});
  cases.push_back({"extortion-alld", extortion, make_all_down(), 0.53, 1.85});
  std::uint64_t seed = 1000;
  for (const auto& c : cases) {
    const auto b = batch_average(MemoryOneAgent(c.x), *c.y, kGC, 7000, 10000, seed++);
    const bool ok = std::abs(b.final_mean_x - c.want_x) <= 0.02 &&
                    std::abs(b.final_mean_y - c.want_y) <= 0.02;
    o.expect(ok, c.name);
    o.detail << c.name << " (" << std::setprecision(4) << b.final_mean_x << ", "
             << b.final_mean_y << ") ";
  }
}

void modified_pd(Outcome& o) {
  const auto g = StageGame::symmetric(10, 0, 11, 9, "modified-pd");
  const auto r = expected_payoffs(StrategyVector({0.91, 0.71, 0.92, 0.0}),
                                  StrategyVector::randomizer(), g);
  o.expect(std::abs(r.pi_x - 6.46) <= 0.01, "pi_X");
  o.expect(std::abs(r.pi_y - 8.75) <= 0.01, "pi_Y");
  const auto ret = retaliation_feasible(g, 9.0);
  o.expect(ret.closed_form.has_value() && *ret.closed_form, "closed-form test");
  o.detail << "(" << r.pi_x << ", " << r.pi_y << "), closed test "
           << (ret.closed_form && *ret.closed_form ? "true" : "false");
}

void best_response_check(Outcome& o) {
  const auto p = synth_extortion(kPD, {1.0, 10.0, std::nullopt});
  for (BRMethod m : {BRMethod::kGrid, BRMethod::kAscent}) {
    BestResponseOptions opts;
    opts.method = m;
    const auto r = best_response(p, kPD, opts);
    const bool ok = r.q_star.p() == Vec4{1, 1, 1, 1};
    o.expect(ok, m == BRMethod::kGrid ? "grid" : "ascent");
    o.detail << (m == BRMethod::kGrid ? "grid " : "ascent ") << r.q_star.to_string() << ' ';
  }
  std::mt19937_64 rng(5);
  double min_component = 1e300;
  for (int i = 0; i < 20; ++i) {
    const auto gr = payoff_gradient(p, StrategyVector(oracle::interior(rng, 0.05)), kPD);
    for (double v : gr.value) min_component = std::min(min_component, v);
  }
  o.expect(min_component > 0, "gradient sign");
  o.detail << "min gradient component " << min_component;
}

void convergence(Outcome& o) {
  std::mt19937_64 rng(31);
  const std::vector<const StageGame*> games{&kPD, &kSH, &kGC, &kBS};
  double worst_ratio = 0;
  for (int pair = 0; pair < 10; ++pair) {
    const StageGame& g = *games[pair % 4];
    const StrategyVector p(oracle::interior(rng, 0.05), 0.5);
    const StrategyVector q(oracle::interior(rng, 0.05), 0.5);
    const auto exact = expected_payoffs(p, q, g);
    const auto mu1 = default_initial(p, q);
    BatchOptions opts;
    opts.reference = {exact.pi_x, exact.pi_y};
    const auto b = batch_average(MemoryOneAgent(p), MemoryOneAgent(q), g, 1000, 1000,
                                 9000 + pair, opts);
    const double cx = convergence_constant(p, q, payoff_bound(g, Player::kX), mu1).c;
    const double cy = convergence_constant(p, q, payoff_bound(g, Player::kY), mu1).c;
    for (long t : {10L, 100L, 1000L}) {
      const std::size_t i = static_cast<std::size_t>(t - 1);  // dense up to 1000
      worst_ratio = std::max({worst_ratio, b.msd_x[i] * t / cx, b.msd_y[i] * t / cy});
      o.expect(b.msd_x[i] <= cx / t && b.msd_y[i] <= cy / t,
               "pair " + std::to_string(pair) + " t=" + std::to_string(t));
    }
  }
  o.detail << "10 pairs, max msd*t/C " << worst_ratio;
}

void evolution(Outcome& o) {
  const NamedStrategy zd{"zd", synth_extortion(kPD, {1.0, 10.0, 0.02})};
  const auto t = payoff_table({zd, {"allu", StrategyVector::all_up()}}, kPD);
  const auto omega = stable_share_omega(t);
  o.expect(omega.has_value(), "omega exists");
  if (omega) {
    const auto rows = replicator_trajectory({0.01, 0.99}, t, 0.01, 200000, 1000);
    const double err = std::abs(rows.back()[0] - *omega);
    o.expect(err < 1e-6, "replicator reaches omega");
    o.detail << "omega " << *omega << ", |x_end - omega| " << err << "; ";
  }
  const auto tt = payoff_table({zd, {"tft", StrategyVector::tit_for_tat()}}, kPD);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  bool monotone = true;
  for (int s = 0; s < 10; ++s) {
    const double x0 = u(rng);
    const auto rows = replicator_trajectory({x0, 1 - x0}, tt, 0.01, 5000);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      monotone &= rows[i][0] <= rows[i - 1][0] + 1e-15;
    }
  }
  o.expect(monotone, "extortioner share vs TFT");
  o.detail << "TFT contest non-increasing from 10 starts: " << (monotone ? "yes" : "no");
}

void memory_one_sufficiency(Outcome& o) {
  const auto mem2 = MemoryTwoAgent::down_after_two_downs();
  const MemoryOneAgent opponent(StrategyVector({0.7, 0.2, 0.6, 0.3}));
  const auto est = estimate_mem1_equivalent(mem2, opponent, kPD, 1000000, 4242);
  const auto a = batch_average(mem2, opponent, kPD, 1000, 1000, 111);
  const auto b = batch_average(MemoryOneAgent(est.p), opponent, kPD, 1000, 1000, 222);
  const double se_x = std::hypot(a.final_se_x, b.final_se_x);
  const double se_y = std::hypot(a.final_se_y, b.final_se_y);
  const double dx = std::abs(a.final_mean_x - b.final_mean_x);
  const double dy = std::abs(a.final_mean_y - b.final_mean_y);
  o.expect(dx <= 3 * se_x, "X mean");
  o.expect(dy <= 3 * se_y, "Y mean");
  o.detail << "p_hat " << est.p.to_string() << ", |dX| " << dx << " (3se " << 3 * se_x
           << "), |dY| " << dy << " (3se " << 3 * se_y << ")";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string only;
  app.add_option("--only", only, "run criteria whose name contains this");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"golden-vectors", golden_vectors},
      {"oracle-equivalence", oracle_equivalence},
      {"constraint-enforcement", enforcement},
      {"figure-batches", figure_batches},
      {"modified-pd-retaliation", modified_pd},
      {"best-response", best_response_check},
      {"convergence-bound", convergence},
      {"evolution", evolution},
      {"memory-one-sufficiency", memory_one_sufficiency},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && name.find(only) == std::string::npos) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << " ["
              << std::fixed << std::setprecision(2) << secs << "s]" << std::defaultfloat
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
