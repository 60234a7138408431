#include "doctest.h"

#include <sstream>

#include "zdlab/errors.hpp"
#include "zdlab/io.hpp"

using namespace zdlab;

TEST_CASE("parse_game tokens") {
  CHECK(parse_game("pd").payoff_vectors().sx == Vec4{3, 0, 5, 1});
  const auto sym = parse_game("sym:4,0,3,1");
  CHECK(sym.kind() == GameKind::kSymmetric);
  CHECK(sym.payoff_vectors().sy == Vec4{4, 3, 0, 1});
  const auto raw = parse_game("raw:1,2,3,4;5,6,7,8");
  CHECK(raw.payoff_vectors().sx == Vec4{1, 2, 3, 4});
  CHECK(raw.payoff_vectors().sy == Vec4{5, 6, 7, 8});
  const auto bos = parse_game("bos:2,1,0,0");
  CHECK(bos.kind() == GameKind::kBattleOfSexes);
  CHECK_THROWS_AS(parse_game("chess"), InvalidArgument);
  CHECK_THROWS_AS(parse_game("sym:1,2,3"), InvalidArgument);
  CHECK_THROWS_AS(parse_game("sym:1,2,x,4"), InvalidArgument);
}

TEST_CASE("game JSON round trip") {
  for (const char* tok : {"pd", "sh", "gc", "bs", "sym:5,0,7,1", "raw:1,2,3,4;4,3,2,1"}) {
    const auto g = parse_game(tok);
    const auto back = game_from_json(game_to_json(g));
    CHECK(back.payoff_vectors().sx == g.payoff_vectors().sx);
    CHECK(back.payoff_vectors().sy == g.payoff_vectors().sy);
    CHECK(back.kind() == g.kind());
  }
  const auto inline_json = parse_game(R"({"kind":"symmetric","payoffs":[3,0,5,1]})");
  CHECK(inline_json.payoff_vectors().sx == Vec4{3, 0, 5, 1});
  CHECK_THROWS_AS(game_from_json(json{{"kind", "raw"}, {"payoffs", {1, 2}}}),
                  InvalidArgument);
}

TEST_CASE("parse_params") {
  auto p = parse_params("delta=1,chi=10 phi=0.02");
  CHECK(p.at("delta") == 1.0);
  CHECK(p.at("chi") == 10.0);
  CHECK(p.at("phi") == doctest::Approx(0.02));
  CHECK_THROWS_AS(parse_params("delta"), InvalidArgument);
  CHECK_THROWS_AS(parse_params("delta=1,delta=2"), InvalidArgument);
  CHECK_THROWS_AS(parse_params("delta=abc"), InvalidArgument);
  CHECK_THROWS_AS(zd_spec_from_params("extortion", parse_params("delta=1")),
                  InvalidArgument);
  CHECK_THROWS_AS(zd_spec_from_params("extortion", parse_params("delta=1,chi=2,x=3")),
                  InvalidArgument);
}

TEST_CASE("zd spec JSON forms") {
  const auto a = zd_spec_from_json(json::parse(R"({"type":"extortion","params":{"delta":1,"chi":3}})"));
  const auto b = zd_spec_from_json(json::parse(R"({"type":"extortion","delta":1,"chi":3})"));
  const auto c = zd_spec_from_json(json::parse(R"({"extortion":{"delta":1,"chi":3}})"));
  for (const auto& s : {a, b, c}) {
    const auto& e = std::get<ExtortionSpec>(s);
    CHECK(e.delta == 1.0);
    CHECK(e.chi == 3.0);
    CHECK_FALSE(e.phi.has_value());
  }
  const ZdSpec m = MischiefSpec{2.0, -0.25};
  const auto back = std::get<MischiefSpec>(zd_spec_from_json(zd_spec_to_json(m)));
  CHECK(back.target == 2.0);
  CHECK(*back.beta == -0.25);
  CHECK_THROWS_AS(zd_spec_from_json(json::parse(R"({"type":"nope"})")), InvalidArgument);
  CHECK_THROWS_AS(zd_spec_from_json(json::parse(R"({"type":"mischief","target":"x"})")),
                  InvalidArgument);
}

TEST_CASE("strategy tokens") {
  const auto pd = parse_game("pd");
  CHECK(parse_strategy("tft").mem1->p() == StrategyVector::tit_for_tat().p());
  const auto m = parse_strategy("mem1:0.1,0.2,0.3,0.4,1");
  CHECK(m.mem1->p() == Vec4{0.1, 0.2, 0.3, 0.4});
  CHECK(m.mem1->first_move() == 1.0);
  const auto z = parse_strategy("extortion:delta=1,chi=3,phi=0.05");
  REQUIRE(z.kind == StrategySpec::Kind::kZd);
  const auto p = resolve_memory_one(z, pd, Player::kX);
  REQUIRE(p.has_value());
  CHECK(p->p()[3] == doctest::Approx(0.0));
  CHECK(p->p()[0] == doctest::Approx(1 - 0.05 * 2 * 2));
  CHECK_FALSE(resolve_memory_one(parse_strategy("learner"), pd, Player::kX));
  CHECK(make_agent(parse_strategy("mem2-dd"), pd, Player::kX)->describe() == "mem2-dd");
  CHECK_THROWS_AS(parse_strategy("mem1:0.1,0.2"), InvalidArgument);
  CHECK_THROWS_AS(parse_strategy("grim"), InvalidArgument);

  for (const char* tok : {"allu", "mem1:0.1,0.2,0.3,0.4,0", "extortion:delta=1,chi=3",
                          "learner"}) {
    const auto s = parse_strategy(tok);
    const auto r = strategy_spec_from_json(strategy_spec_to_json(s));
    CHECK(r.kind == s.kind);
    CHECK(r.name == s.name);
    if (s.mem1) CHECK(r.mem1->p() == s.mem1->p());
  }
}

TEST_CASE("trace and batch writers") {
  const auto pd = parse_game("pd");
  const auto tr = play_iterated(*make_tft(), *make_all_down(), pd, 5, 7);
  const auto j = trace_to_json(tr);
  CHECK(j["schema"] == kTraceSchema);
  CHECK(j["outcomes"].size() == 5);
  CHECK(j["t"].size() == j["avg_x"].size());
  std::ostringstream os;
  write_trace_csv(os, tr);
  CHECK(os.str().rfind("t,avg_x,avg_y\n1,", 0) == 0);

  const auto b = batch_average(*make_tft(), *make_all_up(), pd, 10, 3, 1);
  const auto bj = batch_to_json(b);
  CHECK(bj["schema"] == kBatchSchema);
  CHECK(bj["mean_x"].back().get<double>() == doctest::Approx(3.0));
}

TEST_CASE("constraint lines") {
  const auto pd = parse_game("pd");
  const auto ok = constraint_line(pd, ExtortionSpec{1.0, 3.0, std::nullopt}, "e");
  CHECK(ok.feasible);
  CHECK(ok.strategy.has_value());
  CHECK(ok.segment.has_value());
  // Points on the segment satisfy the linear relation.
  for (const auto& q : {ok.segment->first, ok.segment->second}) {
    CHECK(ok.linear.alpha * q.x + ok.linear.beta * q.y + ok.linear.gamma ==
          doctest::Approx(0).epsilon(1e-9));
  }
  const auto bad = constraint_line(parse_game("bs"), MischiefSpec{1.0, std::nullopt});
  CHECK_FALSE(bad.feasible);
  CHECK_FALSE(bad.violations.empty());
  const auto rj = region_to_json(pd, payoff_region(pd), {ok, bad});
  CHECK(rj["schema"] == kRegionSchema);
  CHECK(rj["lines"].size() == 2);
  CHECK(rj["lines"][1]["feasible"] == false);
}
