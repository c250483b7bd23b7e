#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/json_util.hpp"
#include "pivotlab/polytope/graph.hpp"
#include "pivotlab/polytope/simple_polytope.hpp"

namespace pivotlab::polytope {

using VertexSet = std::vector<std::size_t>;

/// Nonempty faces grouped by dimension; each face is a sorted vertex list and
/// each dimension's list is sorted.
struct FaceLattice {
  std::vector<std::vector<VertexSet>> by_dim;

  std::size_t dimension() const { return by_dim.empty() ? 0 : by_dim.size() - 1; }
  std::size_t count(std::size_t k) const { return k < by_dim.size() ? by_dim[k].size() : 0; }

  std::size_t total() const {
    std::size_t s = 0;
    for (const auto& f : by_dim) s += f.size();
    return s;
  }

  friend bool operator==(const FaceLattice&, const FaceLattice&) = default;
};

inline FaceLattice make_lattice(std::vector<std::set<VertexSet>> sets) {
  FaceLattice out;
  for (auto& s : sets) out.by_dim.emplace_back(s.begin(), s.end());
  return out;
}

// {"dim_0":[[v,...],...], ..., "dim_d":[...], "F":int}
inline Json to_json(const FaceLattice& l) {
  Json j = Json::object();
  for (std::size_t k = 0; k < l.by_dim.size(); ++k) j["dim_" + std::to_string(k)] = l.by_dim[k];
  j["F"] = l.total();
  return j;
}

inline std::uint64_t bit_of(std::size_t v) { return std::uint64_t{1} << v; }

inline VertexSet members(std::uint64_t mask) {
  VertexSet out;
  for (; mask; mask &= mask - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
  return out;
}

/// Ground-truth lattice from the incidences. The r edges at v chosen by a
/// subset E each leave one facet through v; the face they span is the set of
/// vertices on every facet of v that no edge of E leaves.
inline FaceLattice enumerate_faces(const SimplePolytope& p) {
  if (p.vertices() > 64) throw Error(ErrorKind::TooLarge, "face enumeration limited to 64 vertices");
  const std::size_t d = p.dimension();
  if (d > 20) throw Error(ErrorKind::TooLarge, "face enumeration limited to d <= 20");
  std::vector<std::set<VertexSet>> sets(d + 1);
  for (std::size_t v = 0; v < p.vertices(); ++v) {
    const auto& fv = p.facets_of(v);
    for (std::uint32_t E = 0; E < (1u << d); ++E) {
      std::vector<std::size_t> kept;
      for (std::size_t i = 0; i < d; ++i)
        if (!(E >> i & 1u)) kept.push_back(fv[i]);
      VertexSet face;
      for (std::size_t w = 0; w < p.vertices(); ++w) {
        const auto& fw = p.facets_of(w);
        if (std::includes(fw.begin(), fw.end(), kept.begin(), kept.end())) face.push_back(w);
      }
      sets[static_cast<std::size_t>(std::popcount(E))].insert(std::move(face));
    }
  }
  return make_lattice(std::move(sets));
}

/// h_k = number of vertices with exactly k smaller neighbours.
struct OrderingProfile {
  std::vector<std::size_t> ordering;  // ordering[0] is the smallest vertex
  std::vector<std::size_t> h;
  std::uint64_t weight = 0;           // sum_k 2^k h_k
};

inline std::size_t max_degree(const PolytopeGraph& g) {
  std::size_t m = 0;
  for (std::size_t v = 0; v < g.size(); ++v) m = std::max(m, g.degree(v));
  return m;
}

inline OrderingProfile ordering_profile(const PolytopeGraph& g, const std::vector<std::size_t>& ordering) {
  if (ordering.size() != g.size()) throw Error(ErrorKind::InvalidInput, "ordering must list every vertex once");
  std::vector<std::size_t> pos(g.size(), SIZE_MAX);
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (ordering[i] >= g.size() || pos[ordering[i]] != SIZE_MAX)
      throw Error(ErrorKind::InvalidInput, "ordering must list every vertex once");
    pos[ordering[i]] = i;
  }
  if (max_degree(g) > 62) throw Error(ErrorKind::TooLarge, "degree above 62");
  OrderingProfile out{ordering, std::vector<std::size_t>(max_degree(g) + 1, 0), 0};
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::size_t k = 0;
    for (auto u : g.neighbours(v)) k += pos[u] < pos[v];
    ++out.h[k];
    out.weight += std::uint64_t{1} << k;
  }
  return out;
}

struct AofSearch {
  std::uint64_t min_weight = 0;
  std::vector<std::vector<std::size_t>> orderings;  // all orderings of minimum weight, lexicographic
  std::size_t nodes = 0;
};

inline constexpr std::size_t kScanLimit = 9;

/// Weight of every one of the |V|! orderings.
inline AofSearch find_aofs_scan(const PolytopeGraph& g) {
  if (g.size() > kScanLimit) throw Error(ErrorKind::TooLarge, "factorial scan limited to 9 vertices");
  AofSearch out;
  out.min_weight = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    ++out.nodes;
    const auto w = ordering_profile(g, order).weight;
    if (w < out.min_weight) {
      out.min_weight = w;
      out.orderings.clear();
    }
    if (w == out.min_weight) out.orderings.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

/// Branch and bound over partial orderings. An unplaced vertex will end up
/// with at least as many smaller neighbours as it has placed neighbours now,
/// which bounds the weight of every completion from below.
inline AofSearch find_aofs(const PolytopeGraph& g, std::size_t node_budget = 50'000'000) {
  const std::size_t n = g.size();
  if (n > 64) throw Error(ErrorKind::TooLarge, "ordering search limited to 64 vertices");
  if (max_degree(g) > 62) throw Error(ErrorKind::TooLarge, "degree above 62");
  std::vector<std::uint64_t> nb(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (auto u : g.neighbours(v)) nb[v] |= bit_of(u);
  AofSearch out;
  out.min_weight = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::size_t> order;
  auto rec = [&](auto&& self, std::uint64_t placed, std::uint64_t committed) -> void {
    if (++out.nodes > node_budget) throw Error(ErrorKind::BudgetExceeded, "ordering search node budget exhausted");
    if (order.size() == n) {
      if (committed > out.min_weight) return;
      if (committed < out.min_weight) {
        out.min_weight = committed;
        out.orderings.clear();
      }
      out.orderings.push_back(order);
      return;
    }
    std::uint64_t bound = committed;
    for (std::size_t u = 0; u < n; ++u)
      if (!(placed & bit_of(u))) bound += std::uint64_t{1} << std::popcount(nb[u] & placed);
    if (bound > out.min_weight) return;
    for (std::size_t u = 0; u < n; ++u) {
      if (placed & bit_of(u)) continue;
      order.push_back(u);
      self(self, placed | bit_of(u), committed + (std::uint64_t{1} << std::popcount(nb[u] & placed)));
      order.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

inline bool induced_connected(const PolytopeGraph& g, std::uint64_t set) {
  if (!set) return false;
  std::uint64_t seen = set & (~set + 1), frontier = seen;
  while (frontier) {
    std::uint64_t next = 0;
    for (auto v : members(frontier))
      for (auto u : g.neighbours(v))
        if ((set & bit_of(u)) && !(seen & bit_of(u))) next |= bit_of(u);
    seen |= next;
    frontier = next;
  }
  return seen == set;
}

/// Common degree inside the induced subgraph, or -1.
inline int induced_regular_degree(const PolytopeGraph& g, std::uint64_t set) {
  int k = -1;
  for (auto v : members(set)) {
    int c = 0;
    for (auto u : g.neighbours(v)) c += (set & bit_of(u)) != 0;
    if (k >= 0 && c != k) return -1;
    k = c;
  }
  return k;
}

struct Reconstruction {
  FaceLattice lattice;
  std::uint64_t min_weight = 0;
  /// certificates[k][i] is a minimum-weight ordering starting with the
  /// vertices of lattice.by_dim[k][i].
  std::vector<std::vector<std::vector<std::size_t>>> certificates;
};

inline constexpr std::size_t kReconstructMaxVertices = 24;

/// Faces from the graph alone. The weight of an ordering is a sum of
/// per-vertex costs 2^(placed neighbours), so the cheapest completion of a
/// placed set depends only on the set. Minimum-weight orderings are found by
/// dynamic programming over placed sets. The initial segments along optimal
/// orderings that induce connected k-regular subgraphs are the k-faces.
inline Reconstruction reconstruct_faces(const PolytopeGraph& g, std::size_t state_budget = std::size_t{1} << 22) {
  const std::size_t n = g.size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "empty graph");
  if (n > kReconstructMaxVertices || (std::size_t{1} << n) > state_budget)
    throw Error(ErrorKind::BudgetExceeded, "reconstruction needs 2^" + std::to_string(n) + " states");
  if (max_degree(g) > 30) throw Error(ErrorKind::TooLarge, "degree above 30");
  const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  std::vector<std::uint32_t> nb(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (auto u : g.neighbours(v)) nb[v] |= std::uint32_t{1} << u;
  auto cost = [&](std::uint32_t placed, std::size_t u) { return std::uint32_t{1} << std::popcount(nb[u] & placed); };

  std::vector<std::uint32_t> rest(std::size_t{full} + 1, 0);
  for (std::uint32_t S = full; S-- > 0;) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t u = 0; u < n; ++u)
      if (!(S >> u & 1u)) best = std::min(best, cost(S, u) + rest[S | (1u << u)]);
    rest[S] = best;
  }
  constexpr std::uint8_t kUnreached = 0xff;
  std::vector<std::uint8_t> pred(std::size_t{full} + 1, kUnreached);
  pred[0] = 0;
  auto tight = [&](std::uint32_t S, std::size_t u) { return cost(S, u) + rest[S | (1u << u)] == rest[S]; };
  for (std::uint32_t S = 0; S < full; ++S) {
    if (pred[S] == kUnreached) continue;
    for (std::size_t u = 0; u < n; ++u)
      if (!(S >> u & 1u) && tight(S, u) && pred[S | (1u << u)] == kUnreached)
        pred[S | (1u << u)] = static_cast<std::uint8_t>(u);
  }

  const std::size_t d = max_degree(g);
  std::vector<std::set<VertexSet>> sets(d + 1);
  std::vector<std::vector<std::pair<VertexSet, std::vector<std::size_t>>>> certs(d + 1);
  for (std::uint32_t S = 1; S <= full; ++S) {
    if (pred[S] == kUnreached || !induced_connected(g, S)) continue;
    const int k = induced_regular_degree(g, S);
    if (k < 0) continue;
    std::vector<std::size_t> order;
    for (std::uint32_t T = S; T; T &= ~(1u << pred[T])) order.push_back(pred[T]);
    std::reverse(order.begin(), order.end());
    for (std::uint32_t T = S; T != full;) {
      std::size_t u = 0;
      while ((T >> u & 1u) || !tight(T, u)) ++u;
      order.push_back(u);
      T |= 1u << u;
    }
    sets[static_cast<std::size_t>(k)].insert(members(S));
    certs[static_cast<std::size_t>(k)].emplace_back(members(S), std::move(order));
  }
  Reconstruction out;
  out.lattice = make_lattice(std::move(sets));
  out.min_weight = rest[0];
  out.certificates.resize(d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    std::sort(certs[k].begin(), certs[k].end());
    for (auto& [face, order] : certs[k]) out.certificates[k].push_back(std::move(order));
  }
  return out;
}

/// Re-checks a reconstruction: each certificate has minimum weight and lists
/// its face first.
inline bool certificates_hold(const PolytopeGraph& g, const Reconstruction& r) {
  for (std::size_t k = 0; k < r.lattice.by_dim.size(); ++k)
    for (std::size_t i = 0; i < r.lattice.by_dim[k].size(); ++i) {
      const auto& face = r.lattice.by_dim[k][i];
      const auto& order = r.certificates[k][i];
      if (ordering_profile(g, order).weight != r.min_weight) return false;
      VertexSet prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(face.size()));
      std::sort(prefix.begin(), prefix.end());
      if (prefix != face) return false;
    }
  return true;
}

}  // namespace pivotlab::polytope
