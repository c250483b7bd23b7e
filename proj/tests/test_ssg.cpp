#include <catch_amalgamated.hpp>

#include "pivotlab/cube/orientation.hpp"
#include "pivotlab/ssg/game.hpp"
#include "pivotlab/ssg/solve.hpp"
#include "test_support.hpp"

using namespace pivotlab;
using namespace pivotlab::ssg;
using pivotlab::testing::q;

namespace {

// vertices: 0 start, then sinks at the end
SimpleStochasticGame coin() {
  return {{{Label::Neutral, {1, 2}}, {Label::Sink1, {}}, {Label::Sink0, {}}}, 0};
}

SimpleStochasticGame choice(Label who) {
  return {{{who, {1, 2}}, {Label::Sink1, {}}, {Label::Sink0, {}}}, 0};
}

// k coins in a row; vertex k is the 1-sink and k+1 the 0-sink
SimpleStochasticGame chain(std::size_t k) {
  SimpleStochasticGame g;
  for (std::size_t i = 0; i < k; ++i) g.vertices.push_back({Label::Neutral, {i + 1, k + 1}});
  g.vertices.push_back({Label::Sink1, {}});
  g.vertices.push_back({Label::Sink0, {}});
  return g;
}

Rational total(const Vector& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

Strategy random_strategy(const SimpleStochasticGame& g, Rng& rng) {
  auto s = Strategy::zeros(g);
  for (auto& c : s.choice) c = static_cast<std::uint8_t>(rng.below(2));
  return s;
}

}  // namespace

TEST_CASE("validate_game examples") {
  CHECK(validate_game(coin()).valid());
  auto rep = validate_game(coin());
  CHECK(rep.sink0_reachable);
  CHECK(rep.sink1_reachable);

  SimpleStochasticGame loop{{{Label::Max, {1, 2}}, {Label::Neutral, {2, 2}}, {Label::Neutral, {1, 1}},
                             {Label::Sink1, {}}, {Label::Sink0, {}}},
                            0};
  auto bad = validate_game(loop);
  CHECK(bad.has(DefectKind::NonStopping));
  CHECK(bad.trap == std::vector<std::size_t>{0, 1, 2});
  CHECK_FALSE(bad.sink1_reachable);

  SimpleStochasticGame three{{{Label::Neutral, {1, 2, 1}}, {Label::Sink1, {}}, {Label::Sink0, {}}}, 0};
  CHECK(validate_game(three).has(DefectKind::Outdegree));
  SimpleStochasticGame dangling{{{Label::Neutral, {1, 7}}, {Label::Sink1, {}}}, 0};
  CHECK(validate_game(dangling).has(DefectKind::BadEdge));
  SimpleStochasticGame nostart{{{Label::Neutral, {1, 1}}, {Label::Sink1, {}}}, 5};
  CHECK(validate_game(nostart).has(DefectKind::StartMissing));
  SimpleStochasticGame sinkedge{{{Label::Sink1, {0}}}, 0};
  CHECK(validate_game(sinkedge).has(DefectKind::SinkWithEdges));

  // a player may loop only if both its choices stay away from the sinks
  SimpleStochasticGame escape{{{Label::Max, {0, 1}}, {Label::Sink1, {}}}, 0};
  CHECK(validate_game(escape).has(DefectKind::NonStopping));
  SimpleStochasticGame coin_loop{{{Label::Neutral, {0, 1}}, {Label::Sink1, {}}}, 0};
  CHECK(validate_game(coin_loop).valid());
}

TEST_CASE("evaluate_strategy_pair examples") {
  auto g = coin();
  auto z = Strategy::zeros(g);
  CHECK(evaluate_strategy_pair(g, z, z)[0] == q(1, 2));
  auto m = choice(Label::Max);
  CHECK(evaluate_strategy_pair(m, z, z)[0] == 1);
  for (std::size_t k = 1; k <= 12; ++k) {
    auto c = chain(k);
    auto zc = Strategy::zeros(c);
    CHECK(evaluate_strategy_pair(c, zc, zc)[0] == Rational(1, Integer(1) << k));
  }
  SimpleStochasticGame trap{{{Label::Max, {0, 1}}, {Label::Sink1, {}}}, 0};
  CHECK_THROWS_AS(evaluate_strategy_pair(trap, Strategy::zeros(trap), Strategy::zeros(trap)), Error);
}

TEST_CASE("best responses") {
  auto g = coin();
  auto br = best_response_max(g, Strategy::zeros(g));
  CHECK(br.values[0] == q(1, 2));
  auto m = choice(Label::Max);
  auto bm = best_response_max(m, Strategy::zeros(m));
  CHECK(bm.strategy.choice[0] == 0);
  CHECK(bm.values[0] == 1);
  auto n = choice(Label::Min);
  auto bn = best_response_min(n, Strategy::zeros(n));
  CHECK(bn.strategy.choice[0] == 1);
  CHECK(bn.values[0] == 0);

  for (std::uint64_t s = 0; s < 40; ++s) {
    auto rg = random_stopping_game(8, mix64(31, s));
    Rng rng(s);
    auto smin = random_strategy(rg, rng);
    auto lpv = detail::max_values_by_lp(rg, smin);
    auto pi = detail::max_best_response_pi(rg, smin);
    CHECK(lpv == pi.values);
    // no single deviation by Max improves
    for (std::size_t u = 0; u < rg.size(); ++u)
      if (rg.label(u) == Label::Max) {
        auto alt = pi.strategy;
        alt.choice[u] ^= 1u;
        auto v = evaluate_strategy_pair(rg, alt, smin);
        for (std::size_t w = 0; w < rg.size(); ++w) CHECK(v[w] <= pi.values[w]);
      }
  }
}

TEST_CASE("value iteration") {
  auto g = coin();
  auto b = value_iteration(g, 5);
  CHECK(b.lower[0] == q(1, 2));
  CHECK(b.residual == 0);
  auto sinks = value_iteration(choice(Label::Max), 1);
  CHECK(sinks.residual == 0);
  CHECK(sinks.lower[0] == 1);

  for (std::size_t k : {3u, 6u}) {
    auto c = chain(k);
    auto exact = evaluate_strategy_pair(c, Strategy::zeros(c), Strategy::zeros(c));
    for (std::size_t it : {1u, 2u, 10u}) {
      auto vb = value_iteration(c, it);
      CHECK(vb.lower[0] <= exact[0]);
      CHECK(exact[0] <= vb.upper[0]);
      CHECK(vb.upper[0] - vb.lower[0] <= vb.residual);
      if (it >= k) CHECK(vb.residual == 0);
    }
  }

  for (std::uint64_t s = 0; s < 20; ++s) {
    auto rg = random_stopping_game(7, mix64(5, s));
    auto exact = strategy_iteration(rg).values;
    Vector prev(rg.size());
    for (std::size_t it = 1; it <= 40; it += 13) {
      auto vb = value_iteration(rg, it);
      for (std::size_t u = 0; u < rg.size(); ++u) {
        CHECK(vb.lower[u] <= exact[u]);
        CHECK(exact[u] <= vb.upper[u]);
        CHECK(prev[u] <= vb.lower[u]);
      }
      prev = vb.lower;
    }
    auto far = value_iteration(rg, 200);
    CHECK(to_double(far.residual) < 1e-3);
  }
}

TEST_CASE("ludwig_solve examples") {
  auto c = coin();
  auto s0 = ludwig_solve(c, 1);
  CHECK(s0.values[0] == q(1, 2));
  CHECK(s0.evaluations == 1);
  auto n = choice(Label::Min);
  auto sn = ludwig_solve(n, 1);
  CHECK(sn.values[0] == 0);
  CHECK(sn.evaluations == 1);
  auto m = choice(Label::Max);
  auto sm = ludwig_solve(m, 3);
  CHECK(sm.values[0] == 1);
  CHECK(sm.evaluations <= 2);
  CHECK(sm.s_max.choice[0] == 0);

  SimpleStochasticGame mixed{{{Label::Max, {1, 2}}, {Label::Min, {3, 4}}, {Label::Neutral, {3, 4}},
                              {Label::Sink1, {}}, {Label::Sink0, {}}},
                             0};
  auto mx = ludwig_solve(mixed, 0);
  CHECK(mx.values[0] == q(1, 2));
  CHECK(mx.values[1] == 0);
  CHECK(mx.evaluations <= 2);
}

TEST_CASE("ludwig agrees with strategy iteration on random games") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto g = random_stopping_game(2 + s % 9, mix64(99, s));
    auto ref = strategy_iteration(g);
    CHECK(satisfies_optimality(g, ref.values));
    auto a = ludwig_solve(g, s);
    auto b = ludwig_solve(g, s + 1000);
    CHECK(a.values == ref.values);
    CHECK(b.values == ref.values);
    CHECK(satisfies_optimality(g, a.values));
    CHECK(evaluate_strategy_pair(g, a.s_max, a.s_min) == a.values);
    for (std::size_t i = 1; i < a.step_objective.size(); ++i) CHECK(a.step_objective[i] >= a.step_objective[i - 1]);
    auto again = ludwig_solve(g, s);
    CHECK(to_json(g, again).dump() == to_json(g, a).dump());
  }
}

TEST_CASE("strategy cubes are AOFs") {
  int checked = 0;
  for (std::uint64_t s = 0; checked < 25; ++s) {
    auto g = random_stopping_game(10, mix64(123, s));
    const auto k = g.owned_by(Label::Max).size();
    if (k < 2 || k > 8) continue;
    ++checked;
    CHECK(cube::validate_aof(strategy_cube_orientation(g)).valid);
  }
}

TEST_CASE("swapped games and leaks") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto g = random_stopping_game(6, mix64(8, s));
    auto a = strategy_iteration(g).values;
    auto b = strategy_iteration(swapped(g)).values;
    for (std::size_t u = 0; u < g.size(); ++u) CHECK(a[u] == 1 - b[u]);
  }
  SimpleStochasticGame trap{{{Label::Max, {0, 1}}, {Label::Sink1, {}}}, 0};
  auto leaky = with_leak(trap, 3);
  CHECK(validate_game(leaky).valid());
  // Max moves straight to the 1-sink
  CHECK(strategy_iteration(leaky).values[0] == 1);
  SimpleStochasticGame cycle{{{Label::Neutral, {1, 1}}, {Label::Neutral, {0, 0}}, {Label::Sink1, {}}}, 0};
  auto lc = with_leak(cycle, 2);
  CHECK(validate_game(lc).valid());
  CHECK(strategy_iteration(lc).values[0] == 0);
}

TEST_CASE("game JSON") {
  auto g = random_stopping_game(5, 17);
  CHECK(game_from_json(to_json(g)) == g);
  auto j = Json::parse(R"({"vertices":[{"id":1,"label":"sink1"},{"id":0,"label":"neutral","out":[1,2]},
                                       {"id":2,"label":"sink0","out":[]}],"start":0})");
  auto h = game_from_json(j);
  CHECK(h.label(0) == Label::Neutral);
  CHECK(ludwig_solve(h, 0).values[0] == q(1, 2));
  CHECK_THROWS_AS(game_from_json(Json::parse(R"({"vertices":[{"id":0,"label":"chance","out":[0,0]}],"start":0})")),
                  Error);
  CHECK_THROWS_AS(game_from_json(Json::parse(R"({"vertices":[{"id":3,"label":"sink1"}],"start":0})")), Error);
  for (auto m : {SolveMethod::Ludwig, SolveMethod::Policy, SolveMethod::ValueIteration})
    CHECK(parse_solve_method(to_string(m)) == m);
}
