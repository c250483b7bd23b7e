#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/lp/tableau.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab::pivot {

enum class PivotRule { Dantzig, Bland, RandomEdge, RandomFacet };

constexpr std::string_view to_string(PivotRule r) {
  switch (r) {
    case PivotRule::Dantzig: return "dantzig";
    case PivotRule::Bland: return "bland";
    case PivotRule::RandomEdge: return "redge";
    case PivotRule::RandomFacet: return "rfacet";
  }
  return "?";
}

inline PivotRule parse_pivot_rule(std::string_view s) {
  for (auto r : {PivotRule::Dantzig, PivotRule::Bland, PivotRule::RandomEdge, PivotRule::RandomFacet})
    if (s == to_string(r)) return r;
  throw Error(ErrorKind::Parse, "unknown pivot rule '" + std::string(s) + "'");
}

/// The seed fixes every random choice the rule makes.
struct PivotRuleSpec {
  PivotRule kind = PivotRule::Dantzig;
  std::uint64_t seed = 0;
};

/// A nonbasic variable (the slack of a tight row) and its reduced cost.
struct Candidate {
  std::size_t index;
  Rational reduced_cost;
};

/// Candidates in increasing index order, optionally skipping frozen rows.
inline std::vector<Candidate> candidates(const lp::Tableau& t, const std::vector<bool>* frozen = nullptr) {
  std::vector<Candidate> out;
  for (auto r : t.sorted_basis()) {
    if (frozen && (*frozen)[r]) continue;
    out.push_back({r, t.reduced_cost(r)});
  }
  return out;
}

/// Entering choice among `cands` (which must be sorted by index), or nullopt
/// when no candidate improves.
///   Dantzig:    largest reduced cost, lowest index on ties.
///   Bland:      lowest improving index.
///   RandomEdge: uniform over improving candidates.
inline std::optional<std::size_t> select_entering(std::span<const Candidate> cands, PivotRule rule, Rng& rng) {
  switch (rule) {
    case PivotRule::Dantzig: {
      const Candidate* best = nullptr;
      for (const auto& c : cands)
        if (c.reduced_cost > 0 && (!best || c.reduced_cost > best->reduced_cost)) best = &c;
      if (!best) return std::nullopt;
      return best->index;
    }
    case PivotRule::Bland:
      for (const auto& c : cands)
        if (c.reduced_cost > 0) return c.index;
      return std::nullopt;
    case PivotRule::RandomEdge: {
      std::vector<std::size_t> improving;
      for (const auto& c : cands)
        if (c.reduced_cost > 0) improving.push_back(c.index);
      if (improving.empty()) return std::nullopt;
      return improving[rng.below(improving.size())];
    }
    case PivotRule::RandomFacet:
      break;
  }
  throw Error(ErrorKind::InvalidInput, "random facet is a recursive rule, not an edge selector");
}

inline std::optional<std::size_t> select_entering(const lp::Tableau& t, const PivotRuleSpec& rule, Rng& rng) {
  auto cands = candidates(t);
  return select_entering(cands, rule.kind, rng);
}

}  // namespace pivotlab::pivot
