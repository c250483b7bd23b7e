#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/lp/tableau.hpp"
#include "pivotlab/rational.hpp"

namespace pivotlab::lp {

enum class SolveStatus { Optimal, Unbounded, Infeasible };

constexpr std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

struct RandomFacetStats {
  std::size_t calls = 0;       // recursion tree size
  std::size_t max_depth = 0;
  std::size_t base_cases = 0;  // one-dimensional "move to the top" steps taken
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Vector> vertex;         // iff Optimal
  std::optional<Rational> value;        // iff Optimal
  std::optional<Vector> unbounded_ray;  // iff Unbounded
  std::optional<Vector> farkas;         // iff Infeasible
  std::vector<Vector> trace;            // start vertex, then one entry per pivot
  std::vector<std::vector<std::size_t>> trace_bases;  // sorted tight rows per trace entry
  std::size_t pivots = 0;
  std::optional<Tableau> final_tableau;
  std::optional<RandomFacetStats> facet_stats;
};

inline void record(SolveResult& r, const Tableau& t) {
  r.trace.push_back(t.vertex());
  r.trace_bases.push_back(t.sorted_basis());
}

}  // namespace pivotlab::lp
