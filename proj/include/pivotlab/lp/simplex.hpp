#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/lp/linear_program.hpp"
#include "pivotlab/lp/phase_one.hpp"
#include "pivotlab/lp/result.hpp"
#include "pivotlab/lp/tableau.hpp"
#include "pivotlab/pivot/random_facet.hpp"
#include "pivotlab/pivot/rules.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab::lp {

struct SimplexOptions {
  /// Lexicographic perturbation. Off exposes cycling, reported as CycleDetected.
  bool anti_cycling = true;
  std::size_t pivot_limit = 10'000'000;
  pivot::RandomFacetOptions facet;
};

/// Runs the edge-following loop from a feasible tableau.
inline SolveResult follow_edges(const Tableau& start, const pivot::PivotRuleSpec& rule,
                                const SimplexOptions& opts = {}) {
  if (rule.kind == pivot::PivotRule::RandomFacet) return pivot::random_facet_solve(start, rule.seed, opts.facet);
  SolveResult res;
  Rng rng(rule.seed);
  Tableau t = start;
  record(res, t);
  std::set<std::vector<std::size_t>> seen;
  if (!opts.anti_cycling) seen.insert(t.sorted_basis());
  for (;;) {
    auto entering = pivot::select_entering(t, rule, rng);
    if (!entering) {
      res.status = SolveStatus::Optimal;
      res.vertex = t.vertex();
      res.value = t.value();
      break;
    }
    auto leaving = t.leaving_row(*entering);
    if (!leaving) {
      res.status = SolveStatus::Unbounded;
      res.unbounded_ray = t.edge_direction(*entering);
      break;
    }
    if (t.pivot_count() - start.pivot_count() >= opts.pivot_limit)
      throw Error(ErrorKind::TooLarge, "pivot limit reached");
    t = exchange(t, *entering, *leaving);
    record(res, t);
    if (!opts.anti_cycling && !seen.insert(t.sorted_basis()).second)
      throw Error(ErrorKind::CycleDetected, "basis repeated after " +
                                                std::to_string(t.pivot_count() - start.pivot_count()) + " pivots");
  }
  res.pivots = t.pivot_count() - start.pivot_count();
  res.final_tableau = std::move(t);
  return res;
}

/// Phase I followed by the chosen pivot rule. Deterministic in (lp, rule).
inline SolveResult solve_simplex(std::shared_ptr<const LinearProgram> lp, const pivot::PivotRuleSpec& rule,
                                 const SimplexOptions& opts = {}) {
  auto start = phase_one(lp, opts.anti_cycling);
  if (auto* inf = std::get_if<Infeasible>(&start)) {
    SolveResult res;
    res.status = SolveStatus::Infeasible;
    res.farkas = inf->farkas;
    return res;
  }
  return follow_edges(std::get<Tableau>(start), rule, opts);
}

inline SolveResult solve_simplex(const LinearProgram& lp, const pivot::PivotRuleSpec& rule,
                                 const SimplexOptions& opts = {}) {
  return solve_simplex(std::make_shared<const LinearProgram>(lp), rule, opts);
}

}  // namespace pivotlab::lp
