#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/json_util.hpp"

namespace pivotlab::polytope {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph on vertices 0..size()-1.
class PolytopeGraph {
 public:
  PolytopeGraph() = default;

  PolytopeGraph(std::size_t vertices, const std::vector<Edge>& edges) : adj_(vertices) {
    for (auto [u, v] : edges) {
      if (u >= vertices || v >= vertices) throw Error(ErrorKind::InvalidInput, "edge endpoint out of range");
      if (u == v) throw Error(ErrorKind::InvalidInput, "self-loop at vertex " + std::to_string(u));
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end())
        throw Error(ErrorKind::InvalidInput, "duplicate edge");
    }
  }

  std::size_t size() const noexcept { return adj_.size(); }
  const std::vector<std::size_t>& neighbours(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].size(); }

  bool adjacent(std::size_t u, std::size_t v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < size(); ++u)
      for (auto v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Common degree, or nullopt if the graph is not regular.
  std::optional<std::size_t> regular_degree() const {
    if (adj_.empty()) return std::nullopt;
    for (const auto& a : adj_)
      if (a.size() != adj_[0].size()) return std::nullopt;
    return adj_[0].size();
  }

  std::vector<std::size_t> distances_from(std::size_t s) const {
    std::vector<std::size_t> dist(size(), SIZE_MAX);
    std::deque<std::size_t> todo{s};
    dist[s] = 0;
    while (!todo.empty()) {
      auto u = todo.front();
      todo.pop_front();
      for (auto v : adj_[u])
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          todo.push_back(v);
        }
    }
    return dist;
  }

  bool connected() const {
    if (adj_.empty()) return true;
    auto d = distances_from(0);
    return std::find(d.begin(), d.end(), SIZE_MAX) == d.end();
  }

  friend bool operator==(const PolytopeGraph&, const PolytopeGraph&) = default;

 private:
  std::vector<std::vector<std::size_t>> adj_;
};

/// Edge list text: one "u v" pair per line, 0-indexed; '#' starts a comment.
inline PolytopeGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Edge> edges;
  std::size_t n = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;
    std::string extra;
    if (!(ls >> v) || (ls >> extra) || u < 0 || v < 0)
      throw Error(ErrorKind::Parse, "edge list line " + std::to_string(lineno) + ": expected 'u v'");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    n = std::max(n, static_cast<std::size_t>(std::max(u, v)) + 1);
  }
  return PolytopeGraph(n, edges);
}

inline std::string to_edge_list(const PolytopeGraph& g) {
  std::string out;
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

inline PolytopeGraph read_edge_list(const std::string& path) { return parse_edge_list(read_file(path)); }

struct DiameterReport {
  std::size_t diameter = 0;
  std::optional<std::size_t> facets;
  std::optional<std::size_t> d;
  std::optional<bool> hirsch_ok;  // diameter <= facets - d
};

inline std::size_t diameter(const PolytopeGraph& g) {
  std::size_t best = 0;
  for (std::size_t s = 0; s < g.size(); ++s)
    for (auto x : g.distances_from(s)) {
      if (x == SIZE_MAX) throw Error(ErrorKind::InvalidInput, "graph is disconnected");
      best = std::max(best, x);
    }
  return best;
}

}  // namespace pivotlab::polytope
