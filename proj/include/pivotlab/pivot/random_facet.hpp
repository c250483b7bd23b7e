#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/lp/result.hpp"
#include "pivotlab/lp/tableau.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab::pivot {

enum class FacetRepeat {
  /// After reaching the top w of the chosen facet, start over at w with a
  /// fresh uniform facet among those containing w.
  Restart,
  /// After reaching w, first leave the facet along its exit edge, then start over.
  ExitEdge,
};

struct RandomFacetOptions {
  FacetRepeat repeat = FacetRepeat::Restart;
  std::size_t call_budget = 50'000'000;
};

namespace detail {

class FacetWalker {
 public:
  FacetWalker(lp::Tableau start, std::uint64_t seed, RandomFacetOptions opts)
      : t_(std::move(start)), rng_(seed), opts_(opts), fixed_(t_.lp().rows(), false) {
    lp::record(result_, t_);
  }

  lp::SolveResult run() {
    const std::size_t before = t_.pivot_count();
    const bool bounded = descend(0);
    result_.pivots = t_.pivot_count() - before;
    result_.facet_stats = stats_;
    if (bounded) {
      result_.status = lp::SolveStatus::Optimal;
      result_.vertex = t_.vertex();
      result_.value = t_.value();
    } else {
      result_.status = lp::SolveStatus::Unbounded;
    }
    result_.final_tableau = t_;
    return std::move(result_);
  }

 private:
  // Optimizes over the face where every fixed row stays tight. Returns false
  // once an unbounded edge has been found.
  bool descend(std::size_t depth) {
    if (++stats_.calls > opts_.call_budget)
      throw Error(ErrorKind::RecursionBudgetExceeded, "random facet exceeded its call budget");
    stats_.max_depth = std::max(stats_.max_depth, depth);
    for (;;) {
      std::vector<std::size_t> free;
      bool improving = false;
      for (auto r : t_.sorted_basis()) {
        if (fixed_[r]) continue;
        free.push_back(r);
        if (t_.reduced_cost(r) > 0) improving = true;
      }
      if (!improving) return true;
      if (free.size() == 1) {
        ++stats_.base_cases;
        return step(free[0]);
      }
      const std::size_t facet = free[rng_.below(free.size())];
      fixed_[facet] = true;
      const bool bounded = descend(depth + 1);
      fixed_[facet] = false;
      if (!bounded) return false;
      if (opts_.repeat == FacetRepeat::ExitEdge && t_.in_basis(facet) && t_.reduced_cost(facet) > 0) {
        if (!step(facet)) return false;
      }
    }
  }

  bool step(std::size_t entering) {
    auto leaving = t_.leaving_row(entering);
    if (!leaving) {
      result_.unbounded_ray = t_.edge_direction(entering);
      return false;
    }
    t_ = exchange(t_, entering, *leaving);
    lp::record(result_, t_);
    return true;
  }

  lp::Tableau t_;
  Rng rng_;
  RandomFacetOptions opts_;
  std::vector<bool> fixed_;
  lp::SolveResult result_;
  lp::RandomFacetStats stats_;
};

}  // namespace detail

/// Random Facet from a feasible starting tableau. A facet through the current
/// vertex is a tight row; recursing "inside" it keeps that row tight.
inline lp::SolveResult random_facet_solve(const lp::Tableau& start, std::uint64_t seed,
                                          RandomFacetOptions opts = {}) {
  return detail::FacetWalker(start, seed, opts).run();
}

}  // namespace pivotlab::pivot
