#include <catch_amalgamated.hpp>

#include <memory>
#include <set>
#include <variant>

#include "pivotlab/lp/duality.hpp"
#include "pivotlab/lp/enumerate.hpp"
#include "pivotlab/lp/io.hpp"
#include "pivotlab/lp/phase_one.hpp"
#include "pivotlab/lp/simplex.hpp"
#include "pivotlab/pivot/instances.hpp"
#include "test_support.hpp"

using namespace pivotlab;
using namespace pivotlab::lp;
using pivotlab::testing::mat;
using pivotlab::testing::q;
using pivotlab::testing::vec;
using pivot::PivotRule;

namespace {

const PivotRule kAllRules[] = {PivotRule::Dantzig, PivotRule::Bland, PivotRule::RandomEdge, PivotRule::RandomFacet};

Tableau feasible_start(const LinearProgram& lp) {
  auto r = phase_one(lp);
  REQUIRE(std::holds_alternative<Tableau>(r));
  return std::get<Tableau>(r);
}

// Objective of every neighbouring basis is <= the current one.
bool locally_optimal(const Tableau& t) {
  for (auto r : t.sorted_basis()) {
    auto dir = t.edge_direction(r);
    auto leaving = t.leaving_row(r);
    if (!leaving) {
      if (LinearProgram::dot(t.lp().objective(), dir) > 0) return false;
      continue;
    }
    auto next = exchange(t, r, *leaving);
    if (next.value() > t.value()) return false;
  }
  return true;
}

// Lexicographic objective of each trace basis, all under the run's perturbation.
bool lex_increasing(const SolveResult& r) {
  LexValue prev;
  for (std::size_t i = 0; i < r.trace_bases.size(); ++i) {
    auto cur = Tableau::rebased(*r.final_tableau, r.trace_bases[i]).lex_objective();
    if (i > 0 && lex_compare(cur, prev) <= 0) return false;
    prev = std::move(cur);
  }
  return true;
}

}  // namespace

TEST_CASE("rational parsing canonicalizes and round-trips") {
  CHECK(parse_rational("2/6") == q(1, 3));
  CHECK(parse_rational("-4/-8") == q(1, 2));
  CHECK(parse_rational("7") == q(7));
  CHECK(to_string(parse_rational("2/6")) == "1/3");
  CHECK(to_string(q(-5)) == "-5/1");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x/2"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    Rational x(rng.between(-1000000, 1000000), rng.between(1, 100000));
    CHECK(parse_rational(to_string(x)) == x);
  }
}

TEST_CASE("encoding size is the sum of numerator and denominator bit lengths") {
  LinearProgram lp(Vector{q(1), q(3, 4)}, Matrix{{q(-1), q(0)}, {q(5), q(1, 2)}}, Vector{q(0), q(7)});
  // c: 1/1 -> 1+1, 3/4 -> 2+3; A: -1 -> 1+1, 0 -> 0+1, 5 -> 3+1, 1/2 -> 1+2; b: 0 -> 0+1, 7 -> 3+1
  CHECK(lp.encoding_size() == 2 + 5 + 2 + 1 + 4 + 3 + 1 + 4);
  CHECK_THROWS_AS(LinearProgram(Vector{}, Matrix{}, Vector{}), Error);
  CHECK_THROWS_AS(LinearProgram(vec({1}), mat({{1, 2}}), vec({1})), Error);
}

TEST_CASE("phase one") {
  SECTION("unit cube starts at the origin") {
    auto t = feasible_start(pivot::unit_cube(2));
    CHECK(t.vertex() == vec({0, 0}));
  }
  SECTION("x <= -1 and -x <= 0 are infeasible with y = (1,1)") {
    LinearProgram lp(vec({1}), mat({{1}, {-1}}), vec({-1, 0}));
    auto r = phase_one(lp);
    REQUIRE(std::holds_alternative<Infeasible>(r));
    CHECK(std::get<Infeasible>(r).farkas == vec({1, 1}));
    CHECK(verify_farkas(lp, std::get<Infeasible>(r).farkas));
  }
  SECTION("Klee-Minty d=3 starts at the all-lower-bound vertex") {
    auto km = pivot::klee_minty(3);
    auto t = feasible_start(km);
    CHECK(t.vertex() == vec({0, 0, 0}));
    CHECK(km.feasible(t.vertex()));
    CHECK(t.sorted_basis() == std::vector<std::size_t>{0, 1, 2});
  }
  SECTION("infeasible start vertex is repaired") {
    // Lowest independent rows give x = (-5, -5), outside the other rows.
    LinearProgram lp(vec({1, 1}), mat({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), vec({-5, -5, 10, 10}));
    auto t = feasible_start(lp);
    CHECK(lp.feasible(t.vertex()));
  }
  SECTION("rank-deficient constraint matrix has no vertex") {
    LinearProgram lp(vec({1, 0}), mat({{1, 0}, {-1, 0}}), vec({1, 1}));
    CHECK_THROWS_MATCHES(phase_one(lp), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::NotPointed; }));
  }
  SECTION("random infeasible systems produce valid Farkas rows") {
    Rng rng(77);
    int infeasible = 0;
    for (int trial = 0; trial < 150; ++trial) {
      Matrix a(6, Vector(2));
      Vector b(6);
      for (auto& row : a)
        for (auto& v : row) v = rng.between(-5, 5);
      for (auto& v : b) v = rng.between(-6, 2);
      if (linalg::independent_rows(a, 2).size() < 2) continue;
      LinearProgram lp(vec({1, 1}), a, b);
      auto r = phase_one(lp);
      if (auto* inf = std::get_if<Infeasible>(&r)) {
        ++infeasible;
        CHECK(verify_farkas(lp, inf->farkas));
        CHECK(enumerate_vertices(lp).empty());
      } else {
        CHECK(lp.feasible(std::get<Tableau>(r).vertex()));
      }
    }
    CHECK(infeasible > 10);
  }
}

TEST_CASE("pivot_step") {
  SECTION("one-step cube") {
    auto lp = std::make_shared<const LinearProgram>(pivot::unit_cube(1));
    auto t = Tableau::at_basis(lp, {0});
    auto n = pivot_step(t, 0);
    CHECK(n.vertex() == vec({1}));
    CHECK(n.value() == 1);
    CHECK(n.pivot_count() == 1);
  }
  SECTION("blocking row x1 <= 5") {
    auto lp = std::make_shared<const LinearProgram>(vec({1}), mat({{-1}, {1}}), vec({0, 5}));
    auto n = pivot_step(Tableau::at_basis(lp, {0}), 0);
    CHECK(n.vertex() == vec({5}));
  }
  SECTION("no blocking row") {
    auto lp = std::make_shared<const LinearProgram>(vec({1}), mat({{-1}}), vec({0}));
    auto t = Tableau::at_basis(lp, {0});
    CHECK_THROWS_MATCHES(pivot_step(t, 0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::NoBlockingRow; }));
    CHECK(t.edge_direction(0) == vec({1}));
  }
  SECTION("not improving unless forced") {
    auto lp = std::make_shared<const LinearProgram>(vec({-1}), mat({{-1}, {1}}), vec({0, 5}));
    auto t = Tableau::at_basis(lp, {0});
    CHECK_THROWS_MATCHES(pivot_step(t, 0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::NotImproving; }));
    CHECK(pivot_step(t, 0, true).vertex() == vec({5}));
  }
}

TEST_CASE("solve_simplex on small worked instances") {
  SECTION("unit cube d=5 under every rule") {
    auto cube = pivot::unit_cube(5);
    for (auto rule : kAllRules) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto r = solve_simplex(cube, {rule, seed});
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(*r.vertex == vec({1, 1, 1, 1, 1}));
        CHECK(*r.value == 5);
        CHECK(r.pivots <= 5);
      }
    }
  }
  SECTION("Klee-Minty d=3 with Dantzig visits all 8 vertices") {
    auto r = solve_simplex(pivot::klee_minty(3), {PivotRule::Dantzig, 0});
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.pivots == 7);
    std::set<Vector> distinct(r.trace.begin(), r.trace.end());
    CHECK(distinct.size() == 8);
    CHECK(*r.value == 1);
  }
  SECTION("simplex x1 + x2 <= 1") {
    LinearProgram lp(vec({1, 1}), mat({{1, 1}, {-1, 0}, {0, -1}}), vec({1, 0, 0}));
    for (auto rule : kAllRules) {
      auto r = solve_simplex(lp, {rule, 3});
      REQUIRE(r.status == SolveStatus::Optimal);
      CHECK(*r.value == 1);
      CHECK((*r.vertex == vec({1, 0}) || *r.vertex == vec({0, 1})));
    }
  }
  SECTION("unbounded ray is feasible and improving") {
    LinearProgram lp(vec({1, 1}), mat({{-1, 0}, {0, -1}, {1, -1}}), vec({0, 0, 2}));
    for (auto rule : kAllRules) {
      auto r = solve_simplex(lp, {rule, 1});
      REQUIRE(r.status == SolveStatus::Unbounded);
      const auto& ray = *r.unbounded_ray;
      CHECK(LinearProgram::dot(lp.objective(), ray) > 0);
      for (std::size_t i = 0; i < lp.rows(); ++i) CHECK(LinearProgram::dot(lp.row(i), ray) <= 0);
    }
  }
  SECTION("infeasible problem") {
    LinearProgram lp(vec({1}), mat({{1}, {-1}}), vec({-1, 0}));
    auto r = solve_simplex(lp, {PivotRule::Bland, 0});
    CHECK(r.status == SolveStatus::Infeasible);
    CHECK(verify_farkas(lp, *r.farkas));
  }
}

TEST_CASE("degenerate cycling example") {
  // Largest-coefficient rule with lowest-index ratio ties cycles on this
  // problem; rows 0..3 are x >= 0, rows 4..6 the constraints.
  Matrix a{{q(-1), q(0), q(0), q(0)},
           {q(0), q(-1), q(0), q(0)},
           {q(0), q(0), q(-1), q(0)},
           {q(0), q(0), q(0), q(-1)},
           {q(1, 2), q(-11, 2), q(-5, 2), q(9)},
           {q(1, 2), q(-3, 2), q(-1, 2), q(1)},
           {q(1), q(0), q(0), q(0)}};
  LinearProgram lp(vec({10, -57, -9, -24}), a, vec({0, 0, 0, 0, 0, 0, 1}));
  SimplexOptions off;
  off.anti_cycling = false;
  CHECK_THROWS_MATCHES(solve_simplex(lp, {PivotRule::Dantzig, 0}, off), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::CycleDetected; }));
  auto r = solve_simplex(lp, {PivotRule::Dantzig, 0});
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(*r.value == 1);
  CHECK(lex_increasing(r));
}

TEST_CASE("enumerate_vertices") {
  CHECK(enumerate_vertices(pivot::unit_cube(2)).size() == 4);
  std::set<Vector> cube;
  for (auto& v : enumerate_vertices(pivot::unit_cube(2))) cube.insert(v.vertex);
  CHECK(cube == std::set<Vector>{vec({0, 0}), vec({0, 1}), vec({1, 0}), vec({1, 1})});
  LinearProgram simplex(vec({1, 1}), mat({{1, 1}, {-1, 0}, {0, -1}}), vec({1, 0, 0}));
  CHECK(enumerate_vertices(simplex).size() == 3);
  CHECK(enumerate_vertices(pivot::klee_minty(3)).size() == 8);
  CHECK_THROWS_AS(enumerate_vertices(pivot::unit_cube(16)), Error);
}

TEST_CASE("duality certificates") {
  SECTION("unit cube d=2") {
    auto cube = pivot::unit_cube(2);
    auto r = solve_simplex(cube, {PivotRule::Dantzig, 0});
    auto cert = duality_certificate(cube, r);
    CHECK(cert.y == vec({0, 0, 1, 1}));
    CHECK(cert.value == 2);
    CHECK(verify_certificate(cube, cert, *r.value));
  }
  SECTION("maximize x1 s.t. x1 <= 3, x1 >= 0") {
    LinearProgram lp(vec({1}), mat({{1}, {-1}}), vec({3, 0}));
    auto r = solve_simplex(lp, {PivotRule::Bland, 0});
    auto cert = duality_certificate(lp, r);
    CHECK(cert.y == vec({1, 0}));
    CHECK(cert.value == 3);
  }
  SECTION("random 3x5 instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto lp = pivot::random_bounded(3, 5, seed);
      auto r = solve_simplex(lp, {PivotRule::Dantzig, 0});
      REQUIRE(r.status == SolveStatus::Optimal);
      CHECK(verify_certificate(lp, duality_certificate(lp, r), *r.value));
    }
  }
  SECTION("trace-only result has no certificate") {
    auto cube = pivot::unit_cube(2);
    auto r = solve_simplex(cube, {PivotRule::Dantzig, 0});
    r.final_tableau.reset();
    CHECK_THROWS_MATCHES(duality_certificate(cube, r), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::CertificateUnavailable; }));
  }
}

TEST_CASE("properties over seeded random instances") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const std::size_t d = 2 + seed % 3;
    const std::size_t n = d + 2 + seed % 4;
    auto lp = pivot::random_bounded(d, n, seed);
    Rational best;
    bool first = true;
    for (auto& v : enumerate_vertices(lp)) {
      if (first || v.value > best) best = v.value;
      first = false;
    }
    REQUIRE_FALSE(first);
    for (auto rule : kAllRules) {
      for (std::uint64_t s = 0; s < 3; ++s) {
        auto r = solve_simplex(lp, {rule, s});
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(*r.value == best);
        CHECK(lp.feasible(*r.vertex));
        CHECK(locally_optimal(*r.final_tableau));
        CHECK(r.trace.size() == r.pivots + 1);
        // Objective never decreases along the trace; with the perturbation
        // the lexicographic objective of each trace basis strictly rises.
        for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(lp.value(r.trace[i]) >= lp.value(r.trace[i - 1]));
        CHECK(lex_increasing(r));
        auto again = solve_simplex(lp, {rule, s});
        CHECK(to_json(again).dump() == to_json(r).dump());
      }
    }
  }
}

TEST_CASE("LP JSON round trip") {
  auto lp = pivot::klee_minty(3);
  auto j = to_json(lp);
  CHECK(j["c"][2] == "1/1");
  CHECK(linear_program_from_json(Json::parse(j.dump())) == lp);
  CHECK_THROWS_AS(linear_program_from_json(Json::parse(R"({"c":["1"],"A":[["1","2"]],"b":["1"]})")), Error);
}
