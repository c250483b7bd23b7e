#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "pivotlab/cube/recurrences.hpp"
#include "pivotlab/lp/enumerate.hpp"
#include "pivotlab/lp/io.hpp"
#include "pivotlab/lp/phase_one.hpp"
#include "pivotlab/lp/simplex.hpp"
#include "pivotlab/pivot/instances.hpp"
#include "test_support.hpp"

using namespace pivotlab;
using namespace pivotlab::pivot;
using pivotlab::testing::q;

namespace {

const PivotRule kAllRules[] = {PivotRule::Dantzig, PivotRule::Bland, PivotRule::RandomEdge, PivotRule::RandomFacet};

const Candidate kCands[] = {{1, q(3)}, {2, q(5)}, {3, q(-1)}};

lp::Tableau start_of(const lp::LinearProgram& lp) {
  auto r = lp::phase_one(lp);
  REQUIRE(std::holds_alternative<lp::Tableau>(r));
  return std::get<lp::Tableau>(r);
}

}  // namespace

TEST_CASE("select_entering on reduced costs (3, 5, -1)") {
  Rng rng(0);
  CHECK(select_entering(kCands, PivotRule::Dantzig, rng) == 2u);
  CHECK(select_entering(kCands, PivotRule::Bland, rng) == 1u);
  CHECK_THROWS_AS(select_entering(kCands, PivotRule::RandomFacet, rng), Error);

  std::map<std::size_t, int> freq;
  const int trials = 10'000;
  for (int s = 0; s < trials; ++s) {
    Rng r(mix64(2024, static_cast<std::uint64_t>(s)));
    ++freq[*select_entering(kCands, PivotRule::RandomEdge, r)];
  }
  CHECK(freq.size() == 2);
  CHECK(std::abs(freq[1] / double(trials) - 0.5) <= 0.02);
  CHECK(std::abs(freq[2] / double(trials) - 0.5) <= 0.02);

  const Candidate none[] = {{0, q(0)}, {4, q(-2)}};
  for (auto rule : {PivotRule::Dantzig, PivotRule::Bland, PivotRule::RandomEdge})
    CHECK_FALSE(select_entering(none, rule, rng).has_value());
}

TEST_CASE("Dantzig breaks ties toward the lowest index") {
  Rng rng(0);
  const Candidate tie[] = {{0, q(-1)}, {3, q(2)}, {5, q(2)}};
  CHECK(select_entering(tie, PivotRule::Dantzig, rng) == 3u);
}

TEST_CASE("rule names round-trip") {
  for (auto r : kAllRules) CHECK(parse_pivot_rule(to_string(r)) == r);
  CHECK_THROWS_AS(parse_pivot_rule("steepest"), Error);
  for (auto k : {InstanceKind::UnitCube, InstanceKind::KleeMinty, InstanceKind::RandomBounded})
    CHECK(parse_instance_kind(to_string(k)) == k);
}

TEST_CASE("random facet on the unit cube and the interval") {
  auto cube = unit_cube(3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto r = random_facet_solve(start_of(cube), seed);
    REQUIRE(r.status == lp::SolveStatus::Optimal);
    CHECK(r.vertex == Vector{q(1), q(1), q(1)});
    CHECK(r.pivots <= 3);
    REQUIRE(r.facet_stats); CHECK(r.facet_stats->calls >= 1);
  }
  auto line = unit_cube(1);
  auto r = random_facet_solve(start_of(line), 7);
  CHECK(r.status == lp::SolveStatus::Optimal);
  CHECK(r.vertex == Vector{q(1)});
  CHECK(r.pivots == 1);
  CHECK(r.trace.size() == 2);
}

TEST_CASE("gen_instance examples") {
  auto cube = gen_instance({InstanceKind::UnitCube, 2, 0, q(1, 3), 0});
  CHECK(cube.rows() == 4);
  auto r = lp::solve_simplex(cube, {PivotRule::Dantzig, 0});
  CHECK(r.value == 2);
  CHECK(r.vertex == Vector{q(1), q(1)});

  auto km = gen_instance({InstanceKind::KleeMinty, 3, 0, q(1, 3), 0});
  CHECK(km.rows() == 6);
  CHECK(lp::enumerate_vertices(km).size() == 8);
  CHECK_THROWS_AS(klee_minty(3, q(1, 2)), Error);

  auto rnd = gen_instance({InstanceKind::RandomBounded, 3, 8, q(1, 3), 1});
  CHECK(rnd.rows() == 8);
  CHECK(rnd == gen_instance({InstanceKind::RandomBounded, 3, 8, q(1, 3), 1}));
  for (const auto& row : rnd.matrix())
    for (const auto& a : row) CHECK((a >= -9 && a <= 9 && denominator(a) == 1));
  std::optional<Rational> value;
  for (auto rule : kAllRules) {
    auto s = lp::solve_simplex(rnd, {rule, 3});
    REQUIRE(s.status == lp::SolveStatus::Optimal);
    if (value) CHECK(s.value == *value);
    value = s.value;
  }
}

TEST_CASE("cube speed: every rule needs at most d pivots") {
  for (std::size_t d = 1; d <= 6; ++d) {
    auto lp = unit_cube(d);
    for (auto rule : kAllRules)
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto r = lp::solve_simplex(lp, {rule, seed});
        CHECK(r.status == lp::SolveStatus::Optimal);
        CHECK(r.value == Rational(d));
        CHECK(r.pivots <= d);
      }
  }
}

TEST_CASE("Klee-Minty: Dantzig takes 2^d - 1 pivots") {
  for (std::size_t d = 2; d <= 10; ++d) {
    auto r = lp::solve_simplex(klee_minty(d), {PivotRule::Dantzig, 0});
    INFO("d = " << d);
    CHECK(r.status == lp::SolveStatus::Optimal);
    CHECK(r.pivots == (std::size_t{1} << d) - 1);
  }
}

TEST_CASE("rule agreement and determinism on random instances") {
  for (std::uint64_t k = 0; k < 12; ++k) {
    const std::size_t d = 2 + k % 3, n = d + 3 + k % 4;
    auto lp = random_bounded(d, n, mix64(77, k));
    auto ref = lp::solve_simplex(lp, {PivotRule::Bland, 0});
    REQUIRE(ref.status == lp::SolveStatus::Optimal);
    for (auto rule : kAllRules)
      for (std::uint64_t seed : {1u, 2u}) {
        auto a = lp::solve_simplex(lp, {rule, seed});
        auto b = lp::solve_simplex(lp, {rule, seed});
        CHECK(a.status == ref.status);
        CHECK(a.value == ref.value);
        CHECK(lp::to_json(a).dump() == lp::to_json(b).dump());
      }
  }
}

TEST_CASE("random facet variants agree and stay below the recurrence") {
  const auto g = cube::recurrence_table(cube::RecurrenceKind::GRf, 10, 20);
  for (std::size_t d = 2; d <= 6; ++d) {
    auto lp = klee_minty(d);
    auto start = start_of(lp);
    double sum = 0;
    const int trials = 200;
    for (int s = 0; s < trials; ++s) {
      lp::SimplexOptions opts;
      auto a = random_facet_solve(start, mix64(5, static_cast<std::uint64_t>(s)), opts.facet);
      opts.facet.repeat = FacetRepeat::ExitEdge;
      auto b = random_facet_solve(start, mix64(5, static_cast<std::uint64_t>(s)), opts.facet);
      CHECK(a.value == b.value);
      CHECK(a.pivots < (std::size_t{1} << d));
      sum += static_cast<double>(a.pivots);
    }
    INFO("d = " << d);
    CHECK(sum / trials <= to_double(g.at(d, 2 * d)));
  }
}

TEST_CASE("random facet budget is enforced") {
  RandomFacetOptions opts;
  opts.call_budget = 2;
  CHECK_THROWS_AS(random_facet_solve(start_of(klee_minty(6)), 1, opts), Error);
}
