#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/linalg.hpp"
#include "pivotlab/lp/linear_program.hpp"

namespace pivotlab::lp {

struct EnumeratedVertex {
  Vector vertex;
  Rational value;
};

inline double binomial_estimate(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// Brute-force vertex list: every d-subset of rows with a unique solution
/// satisfying all of A x <= b, deduplicated, sorted by coordinates.
inline std::vector<EnumeratedVertex> enumerate_vertices(const LinearProgram& lp) {
  const std::size_t d = lp.variables();
  const std::size_t n = lp.rows();
  if (n > 30 || (n >= d && binomial_estimate(n, d) > 1e6))
    throw Error(ErrorKind::TooLarge, "vertex enumeration guard: n <= 30 and C(n,d) <= 1e6");
  std::map<Vector, Rational> found;
  if (n < d) return {};
  std::vector<std::size_t> pick(d);
  for (std::size_t i = 0; i < d; ++i) pick[i] = i;
  for (;;) {
    Matrix a;
    Vector b;
    for (auto r : pick) {
      a.push_back(lp.row(r));
      b.push_back(lp.rhs()[r]);
    }
    if (auto x = linalg::solve(a, b); x && lp.feasible(*x)) {
      Rational v = lp.value(*x);
      found.emplace(std::move(*x), std::move(v));
    }
    std::size_t i = d;
    while (i > 0 && pick[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < d; ++k) pick[k] = pick[k - 1] + 1;
  }
  std::vector<EnumeratedVertex> out;
  for (auto& [x, v] : found) out.push_back({x, v});
  return out;
}

}  // namespace pivotlab::lp
