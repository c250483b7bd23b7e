#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pivotlab/cube/orientation.hpp"
#include "pivotlab/error.hpp"
#include "pivotlab/linalg.hpp"
#include "pivotlab/lp/simplex.hpp"
#include "pivotlab/random.hpp"
#include "pivotlab/rational.hpp"
#include "pivotlab/ssg/game.hpp"

namespace pivotlab::ssg {

/// choice[u] in {0,1} selects out-edge choice[u] of u. Only the entries of
/// the owning player's vertices are read.
struct Strategy {
  std::vector<std::uint8_t> choice;

  static Strategy zeros(const SimpleStochasticGame& g) { return {std::vector<std::uint8_t>(g.size(), 0)}; }
  friend bool operator==(const Strategy&, const Strategy&) = default;
};

inline std::size_t chosen(const SimpleStochasticGame& g, const Strategy& s, std::size_t u) {
  return g.succ(u, s.choice[u]);
}

/// Absorption probabilities into the 1-sink with both strategies fixed.
inline Vector evaluate_strategy_pair(const SimpleStochasticGame& g, const Strategy& s_max, const Strategy& s_min) {
  const std::size_t n = g.size();
  if (s_max.choice.size() != n || s_min.choice.size() != n)
    throw Error(ErrorKind::InvalidInput, "strategy size differs from the vertex count");
  std::vector<std::size_t> idx(n, SIZE_MAX);
  std::size_t m = 0;
  for (std::size_t u = 0; u < n; ++u)
    if (!is_sink(g.label(u))) idx[u] = m++;
  Matrix a(m, Vector(m));
  Vector rhs(m);
  auto add = [&](std::size_t row, std::size_t w, const Rational& p) {
    if (g.label(w) == Label::Sink1) rhs[row] += p;
    else if (idx[w] != SIZE_MAX) a[row][idx[w]] -= p;
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (idx[u] == SIZE_MAX) continue;
    const std::size_t r = idx[u];
    a[r][r] += 1;
    switch (g.label(u)) {
      case Label::Max: add(r, chosen(g, s_max, u), 1); break;
      case Label::Min: add(r, chosen(g, s_min, u), 1); break;
      default:
        add(r, g.succ(u, 0), Rational(1, 2));
        add(r, g.succ(u, 1), Rational(1, 2));
    }
  }
  auto sol = linalg::solve(std::move(a), std::move(rhs));
  if (!sol) throw Error(ErrorKind::SingularSystem, "strategy pair does not reach a sink with probability one");
  Vector v(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (g.label(u) == Label::Sink1) v[u] = 1;
    else if (idx[u] != SIZE_MAX) v[u] = (*sol)[idx[u]];
  }
  return v;
}

struct BestResponse {
  Strategy strategy;
  Vector values;
  std::size_t iterations = 0;  // policy-iteration rounds
};

namespace detail {

/// Max's optimal values against fixed Min choices, as the LP
///   maximize -sum v  s.t.  v_u >= v_w (Max u, both w), v_u = avg or v_u = v_{s_min(u)},
///   0 <= v <= 1,
/// over the non-sink vertices.
inline Vector max_values_by_lp(const SimpleStochasticGame& g, const Strategy& s_min) {
  const std::size_t n = g.size();
  std::vector<std::size_t> idx(n, SIZE_MAX);
  std::size_t m = 0;
  for (std::size_t u = 0; u < n; ++u)
    if (!is_sink(g.label(u))) idx[u] = m++;
  Vector v(n);
  for (std::size_t u = 0; u < n; ++u)
    if (g.label(u) == Label::Sink1) v[u] = 1;
  if (m == 0) return v;
  Matrix A;
  Vector b;
  // row: sum coef_w v_w <= rhs, sink terms folded into rhs
  auto push = [&](std::vector<std::pair<std::size_t, Rational>> terms, Rational rhs) {
    Vector row(m);
    for (auto& [w, c] : terms) {
      if (g.label(w) == Label::Sink1) rhs -= c;
      else if (idx[w] != SIZE_MAX) row[idx[w]] += c;
    }
    A.push_back(std::move(row));
    b.push_back(std::move(rhs));
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (idx[u] == SIZE_MAX) continue;
    switch (g.label(u)) {
      case Label::Max:
        for (std::size_t e = 0; e < 2; ++e) push({{g.succ(u, e), 1}, {u, -1}}, 0);
        break;
      case Label::Min:
        push({{chosen(g, s_min, u), 1}, {u, -1}}, 0);
        push({{chosen(g, s_min, u), -1}, {u, 1}}, 0);
        break;
      default:
        push({{g.succ(u, 0), Rational(1, 2)}, {g.succ(u, 1), Rational(1, 2)}, {u, -1}}, 0);
        push({{g.succ(u, 0), Rational(-1, 2)}, {g.succ(u, 1), Rational(-1, 2)}, {u, 1}}, 0);
    }
    push({{u, -1}}, 0);
    push({{u, 1}}, 1);
  }
  lp::LinearProgram prog(Vector(m, Rational(-1)), std::move(A), std::move(b));
  auto res = lp::solve_simplex(prog, {pivot::PivotRule::Dantzig, 0});
  if (res.status != lp::SolveStatus::Optimal)
    throw Error(ErrorKind::OracleMismatch, "best-response LP is " + std::string(lp::to_string(res.status)));
  for (std::size_t u = 0; u < n; ++u)
    if (idx[u] != SIZE_MAX) v[u] = (*res.vertex)[idx[u]];
  return v;
}

inline BestResponse max_best_response_pi(const SimpleStochasticGame& g, const Strategy& s_min) {
  BestResponse br{Strategy::zeros(g), {}, 0};
  for (;;) {
    ++br.iterations;
    br.values = evaluate_strategy_pair(g, br.strategy, s_min);
    bool switched = false;
    for (std::size_t u = 0; u < g.size(); ++u) {
      if (g.label(u) != Label::Max) continue;
      const std::uint8_t other = br.strategy.choice[u] ^ 1u;
      if (br.values[g.succ(u, other)] > br.values[chosen(g, br.strategy, u)]) {
        br.strategy.choice[u] = other;
        switched = true;
      }
    }
    if (!switched) return br;
  }
}

}  // namespace detail

/// Optimal Max strategy against `s_min` by policy iteration, cross-checked
/// against the LP solution.
inline BestResponse best_response_max(const SimpleStochasticGame& g, const Strategy& s_min, bool check_lp = true) {
  auto br = detail::max_best_response_pi(g, s_min);
  if (check_lp && !g.owned_by(Label::Max).empty()) {
    auto lpv = detail::max_values_by_lp(g, s_min);
    if (lpv != br.values) throw Error(ErrorKind::OracleMismatch, "policy iteration and LP disagree on MDP values");
  }
  return br;
}

/// Optimal Min strategy against `s_max`, through the swapped game.
inline BestResponse best_response_min(const SimpleStochasticGame& g, const Strategy& s_max, bool check_lp = true) {
  auto br = best_response_max(swapped(g), s_max, check_lp);
  for (auto& v : br.values) v = 1 - v;
  for (std::size_t u = 0; u < g.size(); ++u)
    if (is_sink(g.label(u))) br.values[u] = g.label(u) == Label::Sink1 ? 1 : 0;
  return br;
}

struct GameSolution {
  Vector values;
  Strategy s_max, s_min;
  std::size_t evaluations = 0;  // strategy evaluations by the outer loop
  std::size_t facet_calls = 0;
  std::size_t steps = 0;        // strategy switches of the outer player
  std::vector<Rational> step_objective;  // outer objective after each visited strategy
};

/// Every vertex value equals the max, min or average of its successors.
inline bool satisfies_optimality(const SimpleStochasticGame& g, const Vector& v) {
  for (std::size_t u = 0; u < g.size(); ++u) {
    switch (g.label(u)) {
      case Label::Sink0: if (v[u] != 0) return false; break;
      case Label::Sink1: if (v[u] != 1) return false; break;
      case Label::Max: if (v[u] != std::max(v[g.succ(u, 0)], v[g.succ(u, 1)])) return false; break;
      case Label::Min: if (v[u] != std::min(v[g.succ(u, 0)], v[g.succ(u, 1)])) return false; break;
      case Label::Neutral: if (v[u] != (v[g.succ(u, 0)] + v[g.succ(u, 1)]) / 2) return false; break;
    }
  }
  return true;
}

/// Hoffman-Karp strategy iteration: Min best-responds, Max switches every
/// improvable vertex.
inline GameSolution strategy_iteration(const SimpleStochasticGame& g) {
  require_valid(g);
  GameSolution sol;
  sol.s_max = Strategy::zeros(g);
  for (;;) {
    auto br = best_response_min(g, sol.s_max);
    ++sol.evaluations;
    sol.values = br.values;
    sol.s_min = br.strategy;
    Rational total = 0;
    for (const auto& x : sol.values) total += x;
    sol.step_objective.push_back(total);
    bool switched = false;
    for (std::size_t u = 0; u < g.size(); ++u) {
      if (g.label(u) != Label::Max) continue;
      const std::uint8_t other = sol.s_max.choice[u] ^ 1u;
      if (sol.values[g.succ(u, other)] > sol.values[chosen(g, sol.s_max, u)]) {
        sol.s_max.choice[u] = other;
        switched = true;
      }
    }
    if (!switched) return sol;
    ++sol.steps;
  }
}

struct ValueBracket {
  Vector lower, upper;  // lower from the zero vector, upper from the all-ones vector
  Rational residual;    // max_u upper - lower
  std::size_t iterations = 0;
};

/// Monotone value iteration from both ends; the true values lie between.
inline ValueBracket value_iteration(const SimpleStochasticGame& g, std::size_t iterations) {
  require_valid(g);
  const std::size_t n = g.size();
  ValueBracket out;
  out.lower.assign(n, 0);
  out.upper.assign(n, 1);
  for (std::size_t u = 0; u < n; ++u)
    if (g.label(u) == Label::Sink0) out.upper[u] = 0;
    else if (g.label(u) == Label::Sink1) out.lower[u] = 1;
  auto step = [&](const Vector& v) {
    Vector w = v;
    for (std::size_t u = 0; u < n; ++u) {
      if (is_sink(g.label(u))) continue;
      const auto& a = v[g.succ(u, 0)];
      const auto& b = v[g.succ(u, 1)];
      switch (g.label(u)) {
        case Label::Max: w[u] = std::max(a, b); break;
        case Label::Min: w[u] = std::min(a, b); break;
        default: w[u] = (a + b) / 2; break;
      }
    }
    return w;
  };
  for (std::size_t it = 0; it < iterations; ++it) {
    out.lower = step(out.lower);
    out.upper = step(out.upper);
  }
  out.iterations = iterations;
  out.residual = 0;
  for (std::size_t u = 0; u < n; ++u) out.residual = std::max(out.residual, Rational(out.upper[u] - out.lower[u]));
  return out;
}

inline constexpr std::size_t kMaxCubeDimension = 24;

namespace detail {

/// Random Facet over the strategies of the Max player of `g`. A strategy's
/// objective is the value sum under Min's best response; ties go to the
/// lexicographically larger bit vector.
class StrategyCube {
 public:
  StrategyCube(const SimpleStochasticGame& g, std::uint64_t seed, std::size_t budget)
      : g_(g), players_(g.owned_by(Label::Max)), rng_(seed), budget_(budget) {
    if (players_.size() > kMaxCubeDimension)
      throw Error(ErrorKind::TooLarge, "strategy cube dimension above 24");
  }

  std::size_t dimension() const { return players_.size(); }

  struct Eval {
    Rational total;
    Vector values;
    Strategy s_min;
  };

  const Eval& eval(std::uint32_t bits) {
    auto it = memo_.find(bits);
    if (it != memo_.end()) return it->second;
    if (memo_.size() >= budget_) throw Error(ErrorKind::BudgetExceeded, "strategy evaluation budget exhausted");
    auto br = best_response_min(g_, strategy(bits));
    Rational total = 0;
    for (const auto& x : br.values) total += x;
    return memo_.emplace(bits, Eval{std::move(total), std::move(br.values), std::move(br.strategy)}).first->second;
  }

  Strategy strategy(std::uint32_t bits) const {
    auto s = Strategy::zeros(g_);
    for (std::size_t i = 0; i < players_.size(); ++i) s.choice[players_[i]] = (bits >> i) & 1u;
    return s;
  }

  // Bit 0 (the lowest-id Max vertex) is the most significant in the tie-break.
  static std::uint32_t lex_key(std::uint32_t bits, std::size_t k) {
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < k; ++i) r |= ((bits >> i) & 1u) << (k - 1 - i);
    return r;
  }

  bool better(std::uint32_t a, std::uint32_t b) {
    const auto& ea = eval(a);
    const auto& eb = eval(b);
    if (ea.total != eb.total) return ea.total > eb.total;
    return lex_key(a, dimension()) > lex_key(b, dimension());
  }

  GameSolution solve() {
    const std::uint32_t all = static_cast<std::uint32_t>((std::uint64_t{1} << dimension()) - 1);
    sol_.step_objective.push_back(eval(v_).total);
    facet(all);
    const auto& e = eval(v_);
    sol_.values = e.values;
    sol_.s_max = strategy(v_);
    sol_.s_min = e.s_min;
    sol_.evaluations = memo_.size();
    return std::move(sol_);
  }

 private:
  void facet(std::uint32_t free) {
    if (++sol_.facet_calls > budget_) throw Error(ErrorKind::BudgetExceeded, "random facet call budget exhausted");
    for (;;) {
      bool top = true;
      for (std::uint32_t r = free; r && top; r &= r - 1)
        if (better(v_ ^ (r & -r), v_)) top = false;
      if (top) return;
      if (std::popcount(free) == 1) {
        move(free);
        return;
      }
      std::uint32_t pick = static_cast<std::uint32_t>(rng_.below(static_cast<std::size_t>(std::popcount(free))));
      std::uint32_t bits = free;
      while (pick--) bits &= bits - 1;
      const std::uint32_t fixed = bits & -bits;
      facet(free & ~fixed);
      if (!better(v_ ^ fixed, v_)) return;
      move(fixed);
    }
  }

  void move(std::uint32_t flip) {
    v_ ^= flip;
    ++sol_.steps;
    sol_.step_objective.push_back(eval(v_).total);
  }

  const SimpleStochasticGame& g_;
  std::vector<std::size_t> players_;
  Rng rng_;
  std::size_t budget_;
  std::uint32_t v_ = 0;
  std::unordered_map<std::uint32_t, Eval> memo_;
  GameSolution sol_;
};

inline GameSolution complemented(GameSolution s, const SimpleStochasticGame& g) {
  for (auto& v : s.values) v = 1 - v;
  for (std::size_t u = 0; u < g.size(); ++u)
    if (is_sink(g.label(u))) s.values[u] = g.label(u) == Label::Sink1 ? 1 : 0;
  std::swap(s.s_max, s.s_min);
  return s;
}

}  // namespace detail

/// Random Facet on a player's strategy cube, the opponent best-responding.
/// The cube is built over whichever player owns fewer vertices; when that is
/// Min the swapped game is solved and its values complemented. The step
/// objectives are those of the cube player.
inline GameSolution ludwig_solve(const SimpleStochasticGame& g, std::uint64_t seed,
                                 std::size_t budget = 10'000'000) {
  require_valid(g);
  const bool swap = g.owned_by(Label::Min).size() < g.owned_by(Label::Max).size();
  if (!swap) {
    auto sol = detail::StrategyCube(g, seed, budget).solve();
    if (!satisfies_optimality(g, sol.values))
      throw Error(ErrorKind::NotAnAof, "strategy cube walk stopped at a non-optimal strategy");
    return sol;
  }
  const auto sg = swapped(g);
  auto sol = detail::complemented(detail::StrategyCube(sg, seed, budget).solve(), g);
  if (!satisfies_optimality(g, sol.values))
    throw Error(ErrorKind::NotAnAof, "strategy cube walk stopped at a non-optimal strategy");
  return sol;
}

/// Cube orientation of the Max strategy cube under the Ludwig objective,
/// for exhaustive AOF checks.
inline cube::CubeOrientation strategy_cube_orientation(const SimpleStochasticGame& g) {
  require_valid(g);
  detail::StrategyCube c(g, 0, SIZE_MAX);
  const std::size_t k = c.dimension();
  if (k < 1 || k > 12) throw Error(ErrorKind::TooLarge, "exhaustive strategy cube needs 1..12 Max vertices");
  std::vector<std::pair<Rational, std::uint32_t>> keys;
  for (std::uint32_t s = 0; s < (1u << k); ++s) keys.emplace_back(c.eval(s).total, detail::StrategyCube::lex_key(s, k));
  return cube::CubeOrientation::from_values(k, keys);
}

enum class SolveMethod { Ludwig, Policy, ValueIteration };

constexpr std::string_view to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Ludwig: return "ludwig";
    case SolveMethod::Policy: return "policy";
    case SolveMethod::ValueIteration: return "vi";
  }
  return "?";
}

inline SolveMethod parse_solve_method(std::string_view s) {
  if (s == "ludwig") return SolveMethod::Ludwig;
  if (s == "policy") return SolveMethod::Policy;
  if (s == "vi") return SolveMethod::ValueIteration;
  throw Error(ErrorKind::Parse, "unknown method '" + std::string(s) + "' (expected ludwig, policy or vi)");
}

inline Json strategy_to_json(const SimpleStochasticGame& g, const Strategy& s, Label owner) {
  Json j = Json::object();
  for (auto u : g.owned_by(owner)) j[std::to_string(u)] = chosen(g, s, u);
  return j;
}

inline Json to_json(const SimpleStochasticGame& g, const GameSolution& s) {
  return Json{{"values", vector_to_json(s.values)},
              {"value", rational_to_json(s.values[g.start])},
              {"s_max", strategy_to_json(g, s.s_max, Label::Max)},
              {"s_min", strategy_to_json(g, s.s_min, Label::Min)},
              {"evaluations", s.evaluations},
              {"facet_calls", s.facet_calls},
              {"steps", s.steps}};
}

inline Json to_json(const SimpleStochasticGame& g, const ValueBracket& b) {
  return Json{{"lower", vector_to_json(b.lower)},
              {"upper", vector_to_json(b.upper)},
              {"value_lower", rational_to_json(b.lower[g.start])},
              {"value_upper", rational_to_json(b.upper[g.start])},
              {"residual", rational_to_json(b.residual)},
              {"iterations", b.iterations}};
}

}  // namespace pivotlab::ssg
