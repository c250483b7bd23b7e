#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pivotlab/cube/orientation.hpp"
#include "pivotlab/error.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab::cube {

enum class CubeRule { RandomEdge, RandomFacet };

constexpr std::string_view to_string(CubeRule r) { return r == CubeRule::RandomEdge ? "redge" : "rfacet"; }

inline CubeRule parse_cube_rule(std::string_view s) {
  if (s == "redge") return CubeRule::RandomEdge;
  if (s == "rfacet") return CubeRule::RandomFacet;
  throw Error(ErrorKind::Parse, "unknown cube rule '" + std::string(s) + "'");
}

struct CubeRun {
  std::size_t steps = 0;
  std::vector<VertexId> path;  // start, then one vertex per step
  std::size_t facet_calls = 0;
};

namespace detail {

class CubeWalker {
 public:
  CubeWalker(const CubeOrientation& o, VertexId start, std::uint64_t seed, std::size_t budget)
      : o_(o), v_(start), rng_(seed), budget_(budget) {
    run_.path.push_back(start);
  }

  CubeRun random_edge() {
    for (;;) {
      std::vector<std::size_t> up;
      for (std::size_t i = 0; i < o_.dimension(); ++i)
        if (o_.improves(v_, v_ ^ (VertexId{1} << i))) up.push_back(i);
      if (up.empty()) break;
      move(up[rng_.below(up.size())]);
    }
    return finish();
  }

  CubeRun random_facet() {
    facet(static_cast<std::uint32_t>((std::uint64_t{1} << o_.dimension()) - 1));
    return finish();
  }

 private:
  // Climbs to the top of the face through the current vertex with free
  // coordinates `free`.
  void facet(std::uint32_t free) {
    if (++run_.facet_calls > budget_)
      throw Error(ErrorKind::RecursionBudgetExceeded, "random facet call budget exhausted");
    for (;;) {
      if ((free & o_.down_mask(v_)) == free) return;
      if (std::popcount(free) == 1) {
        move(static_cast<std::size_t>(std::countr_zero(free)));
        return;
      }
      std::uint32_t pick = static_cast<std::uint32_t>(rng_.below(static_cast<std::size_t>(std::popcount(free))));
      std::uint32_t bits = free;
      while (pick--) bits &= bits - 1;
      const std::uint32_t fixed = bits & -bits;
      facet(free & ~fixed);
      // The current vertex is now the top of the facet, so only the fixed
      // coordinate can still improve.
      const auto coord = static_cast<std::size_t>(std::countr_zero(fixed));
      if (!o_.improves(v_, v_ ^ fixed)) return;
      move(coord);
    }
  }

  void move(std::size_t coord) {
    v_ ^= VertexId{1} << coord;
    ++run_.steps;
    run_.path.push_back(v_);
    if (run_.steps > o_.size())
      throw Error(ErrorKind::NotAnAof, "walk longer than the vertex count");
  }

  CubeRun finish() {
    if (v_ != o_.top())
      throw Error(ErrorKind::NotAnAof, "reached a local maximum of rank " + std::to_string(o_.rank(v_)) +
                                           " that is not the global top");
    return std::move(run_);
  }

  const CubeOrientation& o_;
  VertexId v_;
  Rng rng_;
  std::size_t budget_;
  CubeRun run_;
};

}  // namespace detail

/// Random Edge or Random Facet on an abstract objective function. One step
/// is one move along a cube edge. A run that stalls below the global top
/// proves the ordering is not an AOF and raises NotAnAof.
inline CubeRun run_cube_rule(const CubeOrientation& o, CubeRule rule, VertexId start, std::uint64_t seed,
                             std::size_t call_budget = 100'000'000) {
  if (start >= o.size()) throw Error(ErrorKind::InvalidInput, "start vertex outside the cube");
  detail::CubeWalker w(o, start, seed, call_budget);
  return rule == CubeRule::RandomEdge ? w.random_edge() : w.random_facet();
}

}  // namespace pivotlab::cube
