#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "pivotlab/error.hpp"
#include "pivotlab/rational.hpp"

namespace pivotlab::lp {

/// maximize c^T x subject to A x <= b, x free, with d variables and n rows.
class LinearProgram {
 public:
  LinearProgram(Vector objective, Matrix matrix, Vector rhs)
      : c_(std::move(objective)), a_(std::move(matrix)), b_(std::move(rhs)) {
    if (c_.empty()) throw Error(ErrorKind::InvalidInput, "linear program needs d >= 1 variables");
    if (a_.empty()) throw Error(ErrorKind::InvalidInput, "linear program needs n >= 1 inequalities");
    if (a_.size() != b_.size())
      throw Error(ErrorKind::InvalidInput, "A has " + std::to_string(a_.size()) + " rows but b has " +
                                               std::to_string(b_.size()) + " entries");
    for (const auto& row : a_) {
      if (row.size() != c_.size())
        throw Error(ErrorKind::InvalidInput, "row of A has wrong width " + std::to_string(row.size()));
    }
  }

  std::size_t variables() const noexcept { return c_.size(); }
  std::size_t rows() const noexcept { return a_.size(); }

  const Vector& objective() const noexcept { return c_; }
  const Matrix& matrix() const noexcept { return a_; }
  const Vector& rhs() const noexcept { return b_; }
  const Vector& row(std::size_t i) const { return a_[i]; }

  /// Sum of the bit lengths of every numerator and denominator in c, A, b.
  std::size_t encoding_size() const {
    std::size_t total = 0;
    auto add = [&](const Rational& q) { total += bit_length(numerator(q)) + bit_length(denominator(q)); };
    for (const auto& q : c_) add(q);
    for (const auto& row : a_)
      for (const auto& q : row) add(q);
    for (const auto& q : b_) add(q);
    return total;
  }

  Rational value(std::span<const Rational> x) const { return dot(c_, x); }

  Rational row_activity(std::size_t i, std::span<const Rational> x) const { return dot(a_[i], x); }

  bool feasible(std::span<const Rational> x) const {
    for (std::size_t i = 0; i < rows(); ++i)
      if (row_activity(i, x) > b_[i]) return false;
    return true;
  }

  bool tight(std::size_t i, std::span<const Rational> x) const { return row_activity(i, x) == b_[i]; }

  friend bool operator==(const LinearProgram&, const LinearProgram&) = default;

  static Rational dot(std::span<const Rational> u, std::span<const Rational> v) {
    Rational s = 0;
    for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * v[k];
    return s;
  }

 private:
  Vector c_;
  Matrix a_;
  Vector b_;
};

}  // namespace pivotlab::lp
