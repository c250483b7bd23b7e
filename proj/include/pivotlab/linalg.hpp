#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pivotlab/rational.hpp"

/// Exact Gauss-Jordan helpers shared by the LP and game modules.
namespace pivotlab::linalg {

/// Solves the square system a x = rhs; nullopt when a is singular.
inline std::optional<Vector> solve(Matrix a, Vector rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t k = col; k < n; ++k) a[col][k] *= inv;
    rhs[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix aug(n, Vector(2 * n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) aug[r][k] = a[r][k];
    aug[r][n + r] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && aug[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(aug[pivot], aug[col]);
    const Rational inv = 1 / aug[col][col];
    for (auto& v : aug[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      const Rational f = aug[r][col];
      for (std::size_t k = col; k < 2 * n; ++k) aug[r][k] -= f * aug[col][k];
    }
  }
  Matrix out(n, Vector(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) out[r][k] = aug[r][n + k];
  return out;
}

/// Lowest-index greedy maximal set of linearly independent rows.
inline std::vector<std::size_t> independent_rows(const Matrix& rows, std::size_t width) {
  std::vector<std::size_t> chosen;
  std::vector<Vector> echelon;  // reduced copies of chosen rows
  std::vector<std::size_t> lead;
  for (std::size_t i = 0; i < rows.size() && chosen.size() < width; ++i) {
    Vector v = rows[i];
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      if (v[lead[e]] == 0) continue;
      const Rational f = v[lead[e]] / echelon[e][lead[e]];
      for (std::size_t k = 0; k < width; ++k) v[k] -= f * echelon[e][k];
    }
    std::size_t k = 0;
    while (k < width && v[k] == 0) ++k;
    if (k == width) continue;
    chosen.push_back(i);
    echelon.push_back(std::move(v));
    lead.push_back(k);
  }
  return chosen;
}

}  // namespace pivotlab::linalg
