#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/json_util.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab::ssg {

enum class Label { Max, Min, Neutral, Sink0, Sink1 };

constexpr std::string_view to_string(Label l) {
  switch (l) {
    case Label::Max: return "max";
    case Label::Min: return "min";
    case Label::Neutral: return "neutral";
    case Label::Sink0: return "sink0";
    case Label::Sink1: return "sink1";
  }
  return "?";
}

inline Label parse_label(std::string_view s) {
  if (s == "max") return Label::Max;
  if (s == "min") return Label::Min;
  if (s == "neutral") return Label::Neutral;
  if (s == "sink0") return Label::Sink0;
  if (s == "sink1") return Label::Sink1;
  throw Error(ErrorKind::Parse, "unknown vertex label '" + std::string(s) + "'");
}

constexpr bool is_sink(Label l) { return l == Label::Sink0 || l == Label::Sink1; }

struct GameVertex {
  Label label = Label::Neutral;
  std::vector<std::size_t> out;

  friend bool operator==(const GameVertex&, const GameVertex&) = default;
};

/// Game graph as given; validate_game reports what is wrong with it.
struct SimpleStochasticGame {
  std::vector<GameVertex> vertices;
  std::size_t start = 0;

  std::size_t size() const noexcept { return vertices.size(); }
  Label label(std::size_t u) const { return vertices[u].label; }
  std::size_t succ(std::size_t u, std::size_t which) const { return vertices[u].out[which]; }

  std::vector<std::size_t> owned_by(Label player) const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < size(); ++u)
      if (vertices[u].label == player) out.push_back(u);
    return out;
  }

  friend bool operator==(const SimpleStochasticGame&, const SimpleStochasticGame&) = default;
};

enum class DefectKind { Outdegree, BadEdge, SinkWithEdges, StartMissing, NonStopping };

constexpr std::string_view to_string(DefectKind k) {
  switch (k) {
    case DefectKind::Outdegree: return "outdegree";
    case DefectKind::BadEdge: return "bad-edge";
    case DefectKind::SinkWithEdges: return "sink-with-edges";
    case DefectKind::StartMissing: return "start-missing";
    case DefectKind::NonStopping: return "non-stopping";
  }
  return "?";
}

struct Defect {
  DefectKind kind;
  std::size_t vertex;
  std::string message;
};

struct GameReport {
  std::vector<Defect> defects;
  bool sink0_reachable = false;  // from the start, along any edges
  bool sink1_reachable = false;
  /// Vertices that some strategy pair can keep away from the sinks forever.
  std::vector<std::size_t> trap;

  bool valid() const noexcept { return defects.empty(); }
  bool has(DefectKind k) const {
    for (const auto& d : defects)
      if (d.kind == k) return true;
    return false;
  }
};

/// Structural checks plus the stopping property. A strategy pair avoids the
/// sinks forever from some vertex iff there is a nonempty set X of non-sink
/// vertices where every neutral vertex has both successors in X and every
/// player vertex has one. The largest such X is found by pruning.
inline GameReport validate_game(const SimpleStochasticGame& g) {
  GameReport rep;
  const std::size_t n = g.size();
  bool structural = true;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& v = g.vertices[u];
    if (is_sink(v.label)) {
      if (!v.out.empty()) rep.defects.push_back({DefectKind::SinkWithEdges, u, "sink has outgoing edges"}), structural = false;
      continue;
    }
    if (v.out.size() != 2) {
      rep.defects.push_back({DefectKind::Outdegree, u, "outdegree " + std::to_string(v.out.size()) + ", expected 2"});
      structural = false;
    }
    for (auto w : v.out)
      if (w >= n) rep.defects.push_back({DefectKind::BadEdge, u, "edge to missing vertex " + std::to_string(w)}), structural = false;
  }
  if (g.start >= n) rep.defects.push_back({DefectKind::StartMissing, g.start, "start vertex does not exist"});
  if (!structural) return rep;

  std::vector<bool> in(n);
  for (std::size_t u = 0; u < n; ++u) in[u] = !is_sink(g.label(u));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (!in[u]) continue;
      const bool a = in[g.succ(u, 0)], b = in[g.succ(u, 1)];
      const bool keep = g.label(u) == Label::Neutral ? (a && b) : (a || b);
      if (!keep) in[u] = false, changed = true;
    }
  }
  for (std::size_t u = 0; u < n; ++u)
    if (in[u]) rep.trap.push_back(u);
  if (!rep.trap.empty())
    rep.defects.push_back({DefectKind::NonStopping, rep.trap.front(),
                           std::to_string(rep.trap.size()) + " vertices can avoid the sinks forever"});

  if (g.start < n) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> todo{g.start};
    seen[g.start] = true;
    while (!todo.empty()) {
      auto u = todo.back();
      todo.pop_back();
      if (g.label(u) == Label::Sink0) rep.sink0_reachable = true;
      if (g.label(u) == Label::Sink1) rep.sink1_reachable = true;
      for (auto w : g.vertices[u].out)
        if (!seen[w]) seen[w] = true, todo.push_back(w);
    }
  }
  return rep;
}

inline void require_valid(const SimpleStochasticGame& g) {
  auto rep = validate_game(g);
  if (!rep.valid()) {
    const auto& d = rep.defects.front();
    throw Error(ErrorKind::InvalidInput,
                "invalid game: " + std::string(to_string(d.kind)) + " at vertex " + std::to_string(d.vertex) + ": " + d.message);
  }
}

/// Max and Min trade places, as do the two sinks; values become 1 - value.
inline SimpleStochasticGame swapped(const SimpleStochasticGame& g) {
  auto out = g;
  for (auto& v : out.vertices) {
    switch (v.label) {
      case Label::Max: v.label = Label::Min; break;
      case Label::Min: v.label = Label::Max; break;
      case Label::Sink0: v.label = Label::Sink1; break;
      case Label::Sink1: v.label = Label::Sink0; break;
      case Label::Neutral: break;
    }
  }
  return out;
}

/// Every edge into a non-sink vertex u passes a chain of k fair coins that
/// reaches u with probability 1 - 2^-k and a 0-sink otherwise. The result is
/// stopping; original vertices keep their ids.
inline SimpleStochasticGame with_leak(const SimpleStochasticGame& g, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "leak needs k >= 1");
  auto out = g;
  std::size_t sink0 = out.size();
  for (std::size_t u = 0; u < g.size(); ++u)
    if (g.label(u) == Label::Sink0) sink0 = u;
  if (sink0 == out.size()) out.vertices.push_back({Label::Sink0, {}});
  std::vector<std::size_t> entry(g.size());
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (is_sink(g.label(u))) {
      entry[u] = u;
      continue;
    }
    entry[u] = out.size();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t next = i + 1 < k ? out.size() + 1 : sink0;
      out.vertices.push_back({Label::Neutral, {u, next}});
    }
  }
  for (std::size_t u = 0; u < g.size(); ++u)
    for (auto& w : out.vertices[u].out) w = entry[w];
  return out;
}

/// n non-sink vertices with uniform labels and uniform out-edges over the
/// other vertices; vertex n is the 0-sink, n+1 the 1-sink. Non-stopping
/// draws are rejected.
inline SimpleStochasticGame random_stopping_game(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "need at least one non-sink vertex");
  Rng rng(seed);
  const Label kinds[] = {Label::Max, Label::Min, Label::Neutral};
  for (int round = 0; round < 1000; ++round) {
    SimpleStochasticGame g;
    for (std::size_t u = 0; u < n; ++u) {
      GameVertex v{kinds[rng.below(3)], {}};
      for (int e = 0; e < 2; ++e) {
        std::size_t w = rng.below(n + 1);
        if (w >= u) ++w;  // skip self
        v.out.push_back(w);
      }
      g.vertices.push_back(std::move(v));
    }
    g.vertices.push_back({Label::Sink0, {}});
    g.vertices.push_back({Label::Sink1, {}});
    if (validate_game(g).valid()) return g;
  }
  throw Error(ErrorKind::GenerationFailed, "no stopping game after 1000 draws");
}

// {"vertices":[{"id":int,"label":"max|min|neutral|sink0|sink1","out":[int,int]}], "start":int}

inline Json to_json(const SimpleStochasticGame& g) {
  Json vs = Json::array();
  for (std::size_t u = 0; u < g.size(); ++u)
    vs.push_back(Json{{"id", u}, {"label", to_string(g.label(u))}, {"out", g.vertices[u].out}});
  return Json{{"vertices", vs}, {"start", g.start}};
}

inline SimpleStochasticGame game_from_json(const Json& j) {
  try {
    SimpleStochasticGame g;
    const auto& vs = j.at("vertices");
    g.vertices.resize(vs.size());
    std::vector<bool> seen(vs.size(), false);
    for (const auto& v : vs) {
      const auto id = v.at("id").get<std::size_t>();
      if (id >= vs.size() || seen[id]) throw Error(ErrorKind::Parse, "vertex ids must be 0..n-1, each once");
      seen[id] = true;
      g.vertices[id].label = parse_label(v.at("label").get<std::string>());
      if (v.contains("out")) g.vertices[id].out = v.at("out").get<std::vector<std::size_t>>();
    }
    g.start = j.at("start").get<std::size_t>();
    return g;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("game: ") + e.what());
  }
}

}  // namespace pivotlab::ssg
