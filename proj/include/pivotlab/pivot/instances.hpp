#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "pivotlab/error.hpp"
#include "pivotlab/linalg.hpp"
#include "pivotlab/lp/linear_program.hpp"
#include "pivotlab/lp/simplex.hpp"
#include "pivotlab/random.hpp"

namespace pivotlab::pivot {

enum class InstanceKind { UnitCube, KleeMinty, RandomBounded };

constexpr std::string_view to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::UnitCube: return "cube";
    case InstanceKind::KleeMinty: return "km";
    case InstanceKind::RandomBounded: return "rand";
  }
  return "?";
}

inline InstanceKind parse_instance_kind(std::string_view s) {
  for (auto k : {InstanceKind::UnitCube, InstanceKind::KleeMinty, InstanceKind::RandomBounded})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::Parse, "unknown instance kind '" + std::string(s) + "'");
}

struct InstanceSpec {
  InstanceKind kind = InstanceKind::UnitCube;
  std::size_t d = 2;
  std::size_t n = 0;  // RandomBounded only
  Rational epsilon = Rational(1, 3);  // KleeMinty only
  std::uint64_t seed = 0;  // RandomBounded only
};

/// maximize x_1 + ... + x_d s.t. 0 <= x_i <= 1. Rows: the d lower bounds, then the d upper bounds.
inline lp::LinearProgram unit_cube(std::size_t d) {
  Matrix a(2 * d, Vector(d));
  Vector b(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    a[i][i] = -1;
    a[d + i][i] = 1;
    b[d + i] = 1;
  }
  return lp::LinearProgram(Vector(d, Rational(1)), std::move(a), std::move(b));
}

/// maximize x_d s.t. 0 <= x_1 <= 1, eps x_{i-1} <= x_i <= 1 - eps x_{i-1}.
///
/// Rows are the d lower bounds then the d upper bounds. Both rows of
/// coordinate i (0-based) are multiplied by eps^{-2i}. The polytope is
/// unchanged, but with this scaling the largest-reduced-cost rule started at
/// the all-lower-bounds vertex walks through all 2^d vertices.
inline lp::LinearProgram klee_minty(std::size_t d, const Rational& eps = Rational(1, 3)) {
  if (eps <= 0 || eps >= Rational(1, 2)) throw Error(ErrorKind::InvalidInput, "Klee-Minty needs 0 < eps < 1/2");
  Matrix a(2 * d, Vector(d));
  Vector b(2 * d);
  Rational scale = 1;
  const Rational step = 1 / (eps * eps);
  for (std::size_t i = 0; i < d; ++i) {
    a[i][i] = -scale;
    a[d + i][i] = scale;
    if (i > 0) {
      a[i][i - 1] = eps * scale;
      a[d + i][i - 1] = eps * scale;
    }
    b[d + i] = scale;
    scale *= step;
  }
  Vector c(d);
  c[d - 1] = 1;
  return lp::LinearProgram(std::move(c), std::move(a), std::move(b));
}

/// Integer entries uniform in [-9, 9] for c, A and b, redrawn until the
/// problem is pointed, feasible and bounded (classified by Bland's rule).
inline lp::LinearProgram random_bounded(std::size_t d, std::size_t n, std::uint64_t seed) {
  if (n <= d) throw Error(ErrorKind::InvalidInput, "random bounded instances need n > d");
  Rng rng(seed);
  for (int round = 0; round < 1000; ++round) {
    Vector c(d);
    Matrix a(n, Vector(d));
    Vector b(n);
    for (auto& v : c) v = rng.between(-9, 9);
    for (auto& row : a)
      for (auto& v : row) v = rng.between(-9, 9);
    for (auto& v : b) v = rng.between(-9, 9);
    if (linalg::independent_rows(a, d).size() < d) continue;
    lp::LinearProgram lp(std::move(c), std::move(a), std::move(b));
    auto res = lp::solve_simplex(lp, {PivotRule::Bland, 0});
    if (res.status == lp::SolveStatus::Optimal) return lp;
  }
  throw Error(ErrorKind::GenerationFailed, "no bounded feasible instance after 1000 rounds");
}

inline lp::LinearProgram gen_instance(const InstanceSpec& spec) {
  if (spec.d < 1) throw Error(ErrorKind::InvalidInput, "instance dimension must be >= 1");
  switch (spec.kind) {
    case InstanceKind::UnitCube: return unit_cube(spec.d);
    case InstanceKind::KleeMinty: return klee_minty(spec.d, spec.epsilon);
    case InstanceKind::RandomBounded: return random_bounded(spec.d, spec.n, spec.seed);
  }
  throw Error(ErrorKind::InvalidInput, "unknown instance kind");
}

}  // namespace pivotlab::pivot
