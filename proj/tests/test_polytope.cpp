#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "pivotlab/polytope/faces.hpp"
#include "pivotlab/polytope/graph.hpp"
#include "pivotlab/polytope/simple_polytope.hpp"
#include "pivotlab/random.hpp"
#include "test_support.hpp"

using namespace pivotlab;
using namespace pivotlab::polytope;
using pivotlab::testing::data_path;

namespace {

// Independent AOF check: every face of the lattice has one local maximum.
bool aof_on_faces(const PolytopeGraph& g, const FaceLattice& lat, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& dim : lat.by_dim)
    for (const auto& face : dim) {
      int maxima = 0;
      for (auto v : face) {
        bool top = true;
        for (auto u : g.neighbours(v))
          if (std::binary_search(face.begin(), face.end(), u) && pos[u] > pos[v]) top = false;
        maxima += top;
      }
      if (maxima != 1) return false;
    }
  return true;
}

std::vector<SimplePolytope> fidelity_set() {
  std::vector<SimplePolytope> out;
  for (std::size_t d = 1; d <= 4; ++d) out.push_back(simplex(d));
  for (std::size_t d = 1; d <= 3; ++d) out.push_back(cube(d));
  for (std::size_t m = 3; m <= 5; ++m) out.push_back(prism(polygon(m)));
  return out;
}

std::vector<std::size_t> shuffled(std::size_t n, Rng& rng) {
  std::vector<std::size_t> o(n);
  std::iota(o.begin(), o.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(o[i - 1], o[rng.below(i)]);
  return o;
}

}  // namespace

TEST_CASE("face counts of small polytopes") {
  auto c = enumerate_faces(cube(3));
  CHECK(c.total() == 27);
  CHECK(c.count(0) == 8);
  CHECK(c.count(1) == 12);
  CHECK(c.count(2) == 6);
  CHECK(c.count(3) == 1);
  auto t = enumerate_faces(simplex(3));
  CHECK(t.total() == 15);
  CHECK(t.count(2) == 4);
  auto p = enumerate_faces(prism(simplex(2)));
  CHECK(p.total() == 21);
  CHECK(p.count(0) == 6);
  CHECK(p.count(1) == 9);
  CHECK(p.count(2) == 5);
  CHECK(enumerate_faces(cube(4)).total() == 81);
}

TEST_CASE("faces are closed under intersection") {
  for (const auto& P : fidelity_set()) {
    auto lat = enumerate_faces(P);
    std::set<VertexSet> all;
    for (const auto& dim : lat.by_dim) all.insert(dim.begin(), dim.end());
    for (const auto& a : all)
      for (const auto& b : all) {
        VertexSet c;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
        CHECK((c.empty() || all.count(c) == 1));
      }
  }
}

TEST_CASE("incidence validation") {
  CHECK_THROWS_AS(SimplePolytope(2, {{0, 1}, {1, 2}, {2}}), Error);
  CHECK_THROWS_AS(SimplePolytope(2, {{0, 1}, {0, 1}, {1, 2}, {2, 0}}), Error);
  // two disjoint segments glued as one "1-polytope"
  CHECK_THROWS_AS(SimplePolytope(1, {{0}, {1}, {2}, {3}}), Error);
  try {
    SimplePolytope(2, {{0, 1}, {1, 2}, {2}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSimple);
  }
  auto sq = simple_polytope_from_json(to_json(cube(2)));
  CHECK(sq.graph() == cube(2).graph());
}

TEST_CASE("ordering profiles") {
  auto g = cube(3).graph();
  std::vector<std::size_t> binary(8);
  std::iota(binary.begin(), binary.end(), 0);
  auto prof = ordering_profile(g, binary);
  CHECK(prof.h == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(prof.weight == 27);
  // bottom square ordered 00 < 11 < 01 < 10: two local maxima there
  auto bad = ordering_profile(g, {0, 3, 1, 2, 4, 5, 6, 7});
  CHECK(bad.weight >= 28);

  auto seg = simplex(1).graph();
  CHECK(ordering_profile(seg, {0, 1}).h == std::vector<std::size_t>{1, 1});
  CHECK(ordering_profile(seg, {1, 0}).weight == 3);
  CHECK(enumerate_faces(simplex(1)).total() == 3);
  CHECK_THROWS_AS(ordering_profile(g, {0, 1, 2}), Error);
  CHECK_THROWS_AS(ordering_profile(g, {0, 0, 1, 2, 3, 4, 5, 6}), Error);
}

TEST_CASE("weight is at least F(P), with equality exactly on AOFs") {
  Rng rng(21);
  for (const auto& P : fidelity_set()) {
    const auto& g = P.graph();
    auto lat = enumerate_faces(P);
    int hits = 0;
    for (int s = 0; s < 300; ++s) {
      auto order = shuffled(g.size(), rng);
      auto prof = ordering_profile(g, order);
      std::size_t sum = 0;
      for (auto h : prof.h) sum += h;
      CHECK(sum == g.size());
      CHECK(prof.weight >= lat.total());
      const bool aof = aof_on_faces(g, lat, order);
      CHECK((prof.weight == lat.total()) == aof);
      hits += aof;
    }
    CHECK(hits > 0);
  }
}

TEST_CASE("find_aofs examples") {
  auto tet = find_aofs_scan(simplex(3).graph());
  CHECK(tet.min_weight == 15);
  CHECK(tet.orderings.size() == 24);

  auto cg = cube(3).graph();
  auto lat = enumerate_faces(cube(3));
  auto c = find_aofs(cg);
  CHECK(c.min_weight == 27);
  for (const auto& o : c.orderings) CHECK(aof_on_faces(cg, lat, o));
  CHECK(c.orderings == find_aofs_scan(cg).orderings);

  CHECK(find_aofs_scan(prism(simplex(2)).graph()).min_weight == 21);
  CHECK_THROWS_AS(find_aofs(cg, 10), Error);
  CHECK_THROWS_AS(find_aofs_scan(prism(polygon(5)).graph()), Error);
}

TEST_CASE("branch and bound matches the full scan") {
  for (const auto& P : fidelity_set()) {
    if (P.vertices() > 7) continue;
    auto scan = find_aofs_scan(P.graph());
    auto bb = find_aofs(P.graph());
    CHECK(scan.min_weight == bb.min_weight);
    CHECK(scan.orderings == bb.orderings);
    CHECK(bb.min_weight == enumerate_faces(P).total());
    CHECK(bb.nodes <= scan.nodes * 3);
  }
}

TEST_CASE("reconstruction fidelity") {
  for (const auto& P : fidelity_set()) {
    INFO("vertices " << P.vertices() << ", d " << P.dimension());
    auto r = reconstruct_faces(P.graph());
    auto oracle = enumerate_faces(P);
    CHECK(r.lattice == oracle);
    CHECK(r.min_weight == oracle.total());
    CHECK(certificates_hold(P.graph(), r));
    CHECK(to_json(r.lattice) == to_json(oracle));
  }
  auto seg = reconstruct_faces(simplex(1).graph());
  CHECK(seg.lattice.count(1) == 1);
  auto tet = reconstruct_faces(simplex(3).graph());
  CHECK(tet.lattice.count(2) == 4);
  auto cb = reconstruct_faces(cube(3).graph());
  CHECK(cb.lattice.count(2) == 6);
  CHECK(cb.lattice.count(1) == 12);
  CHECK(reconstruct_faces(product(simplex(2), simplex(2)).graph()).lattice == enumerate_faces(product(simplex(2), simplex(2))));
  CHECK_THROWS_AS(reconstruct_faces(cube(3).graph(), 16), Error);
}

TEST_CASE("lattice JSON layout") {
  auto j = to_json(enumerate_faces(simplex(2)));
  CHECK(j.at("F") == 7);
  CHECK(j.at("dim_0").size() == 3);
  CHECK(j.at("dim_2") == Json::parse("[[0,1,2]]"));
}

TEST_CASE("diameter and Hirsch") {
  for (std::size_t d = 1; d <= 5; ++d) {
    auto r = diameter_and_hirsch(cube(d));
    CHECK(r.diameter == d);
    CHECK(*r.facets == 2 * d);
    CHECK(*r.hirsch_ok);
  }
  auto s = diameter_and_hirsch(simplex(3));
  CHECK(s.diameter == 1);
  CHECK(*s.facets == 4);
  CHECK(*s.hirsch_ok);
  auto tt = diameter_and_hirsch(product(simplex(2), simplex(2)));
  CHECK(tt.diameter == 2);
  CHECK(*tt.facets == 6);
  CHECK(*tt.d == 4);
  CHECK(*tt.hirsch_ok);
  for (const auto& P : fidelity_set()) CHECK(*diameter_and_hirsch(P).hirsch_ok);
  auto g = diameter_and_hirsch(cube(3).graph());
  CHECK(g.diameter == 3);
  CHECK_FALSE(g.hirsch_ok.has_value());
}

TEST_CASE("edge-list files") {
  auto tet = read_edge_list(data_path("tetrahedron.edges"));
  CHECK(tet == simplex(3).graph());
  auto cg = read_edge_list(data_path("cube3.edges"));
  CHECK(cg == cube(3).graph());
  auto pr = read_edge_list(data_path("prism3.edges"));
  CHECK(pr == prism(simplex(2)).graph());
  auto oracle = simple_polytope_from_json(read_json_file(data_path("cube3.polytope.json")));
  CHECK(reconstruct_faces(cg).lattice == enumerate_faces(oracle));
  CHECK(parse_edge_list(to_edge_list(cg)) == cg);
  CHECK_THROWS_AS(parse_edge_list("0 1\n1\n"), Error);
  CHECK_THROWS_AS(parse_edge_list("0 0\n"), Error);
  CHECK_THROWS_AS(parse_edge_list("0 1\n1 0\n"), Error);
  CHECK_THROWS_AS(read_edge_list("/nonexistent/x.edges"), Error);
}
