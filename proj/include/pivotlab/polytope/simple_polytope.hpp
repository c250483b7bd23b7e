#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/json_util.hpp"
#include "pivotlab/polytope/graph.hpp"

namespace pivotlab::polytope {

/// Combinatorial simple d-polytope given by the facets through each vertex.
class SimplePolytope {
 public:
  SimplePolytope(std::size_t d, std::vector<std::vector<std::size_t>> vertex_facets)
      : d_(d), vf_(std::move(vertex_facets)) {
    if (d_ < 1) throw Error(ErrorKind::NotSimple, "dimension must be positive");
    if (vf_.size() < d_ + 1) throw Error(ErrorKind::NotSimple, "a d-polytope has at least d+1 vertices");
    std::set<std::vector<std::size_t>> distinct;
    for (auto& f : vf_) {
      std::sort(f.begin(), f.end());
      if (f.size() != d_ || std::adjacent_find(f.begin(), f.end()) != f.end())
        throw Error(ErrorKind::NotSimple, "every vertex must lie in exactly d distinct facets");
      if (!distinct.insert(f).second) throw Error(ErrorKind::NotSimple, "two vertices share all their facets");
      for (auto x : f) facets_ = std::max(facets_, x + 1);
    }
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < vf_.size(); ++u)
      for (std::size_t v = u + 1; v < vf_.size(); ++v)
        if (shared(u, v) == d_ - 1) edges.emplace_back(u, v);
    graph_ = PolytopeGraph(vf_.size(), edges);
    if (graph_.regular_degree() != d_ || !graph_.connected())
      throw Error(ErrorKind::NotSimple, "derived graph is not connected and d-regular");
  }

  std::size_t dimension() const noexcept { return d_; }
  std::size_t vertices() const noexcept { return vf_.size(); }
  std::size_t facets() const noexcept { return facets_; }
  const std::vector<std::size_t>& facets_of(std::size_t v) const { return vf_[v]; }
  const std::vector<std::vector<std::size_t>>& vertex_facets() const noexcept { return vf_; }
  const PolytopeGraph& graph() const noexcept { return graph_; }

 private:
  std::size_t shared(std::size_t u, std::size_t v) const {
    std::size_t c = 0;
    for (auto x : vf_[u]) c += std::binary_search(vf_[v].begin(), vf_[v].end(), x);
    return c;
  }

  std::size_t d_;
  std::vector<std::vector<std::size_t>> vf_;
  std::size_t facets_ = 0;
  PolytopeGraph graph_;
};

/// Vertex i misses facet i.
inline SimplePolytope simplex(std::size_t d) {
  std::vector<std::vector<std::size_t>> vf(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t f = 0; f <= d; ++f)
      if (f != i) vf[i].push_back(f);
  return SimplePolytope(d, vf);
}

/// Vertex v lies on facet 2i + bit_i(v).
inline SimplePolytope cube(std::size_t d) {
  if (d > 20) throw Error(ErrorKind::TooLarge, "cube dimension above 20");
  std::vector<std::vector<std::size_t>> vf(std::size_t{1} << d);
  for (std::size_t v = 0; v < vf.size(); ++v)
    for (std::size_t i = 0; i < d; ++i) vf[v].push_back(2 * i + ((v >> i) & 1u));
  return SimplePolytope(d, vf);
}

/// m-gon; vertex i lies on edges i and i+1.
inline SimplePolytope polygon(std::size_t m) {
  if (m < 3) throw Error(ErrorKind::InvalidInput, "polygon needs at least 3 vertices");
  std::vector<std::vector<std::size_t>> vf(m);
  for (std::size_t i = 0; i < m; ++i) vf[i] = {i, (i + 1) % m};
  return SimplePolytope(2, vf);
}

/// Cartesian product; vertex (u, w) is numbered u * |Q| + w.
inline SimplePolytope product(const SimplePolytope& p, const SimplePolytope& q) {
  std::vector<std::vector<std::size_t>> vf;
  for (std::size_t u = 0; u < p.vertices(); ++u)
    for (std::size_t w = 0; w < q.vertices(); ++w) {
      auto f = p.facets_of(u);
      for (auto x : q.facets_of(w)) f.push_back(p.facets() + x);
      vf.push_back(std::move(f));
    }
  return SimplePolytope(p.dimension() + q.dimension(), vf);
}

inline SimplePolytope prism(const SimplePolytope& p) { return product(p, simplex(1)); }

// {"d":int, "vertex_facets":[[f,...],...]}

inline Json to_json(const SimplePolytope& p) {
  return Json{{"d", p.dimension()}, {"vertex_facets", p.vertex_facets()}};
}

inline SimplePolytope simple_polytope_from_json(const Json& j) {
  try {
    return SimplePolytope(j.at("d").get<std::size_t>(),
                          j.at("vertex_facets").get<std::vector<std::vector<std::size_t>>>());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("polytope: ") + e.what());
  }
}

inline DiameterReport diameter_and_hirsch(const SimplePolytope& p) {
  DiameterReport r;
  r.diameter = diameter(p.graph());
  r.facets = p.facets();
  r.d = p.dimension();
  r.hirsch_ok = r.diameter + p.dimension() <= p.facets();
  return r;
}

inline DiameterReport diameter_and_hirsch(const PolytopeGraph& g) { return {diameter(g), {}, {}, {}}; }

}  // namespace pivotlab::polytope
