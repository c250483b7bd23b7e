#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/linalg.hpp"
#include "pivotlab/lp/linear_program.hpp"
#include "pivotlab/rational.hpp"

namespace pivotlab::lp {

/// Element of Q[eps] stored as (constant, eps^1, eps^2, ...), ordered as eps -> 0+.
using LexValue = std::vector<Rational>;

inline int lex_compare(const LexValue& a, const LexValue& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Rational& x = k < a.size() ? a[k] : Rational(0);
    const Rational& y = k < b.size() ? b[k] : Rational(0);
    if (x < y) return -1;
    if (x > y) return 1;
  }
  return 0;
}

inline bool lex_positive(const LexValue& a) { return lex_compare(a, LexValue{}) > 0; }

/// Symbolic right-hand side b_j + eps^order[j]; order 0 means unperturbed.
struct Perturbation {
  std::vector<std::size_t> order;
  std::size_t terms = 0;
};

/// A vertex of {A x <= b} given by d tight, linearly independent rows.
///
/// The dictionary has the free x and the slacks of non-tight rows as basic
/// variables; the slacks of the tight rows (the basis here) are nonbasic.
/// Relaxing tight row r moves along -A_B^{-1} e_r with reduced cost -y_r,
/// where y^T A_B = c^T. The stored inverse is kept column-wise so each column
/// is directly an edge direction (negated).
///
/// With lexicographic mode on, rows outside the basis the tableau was built
/// from are perturbed by eps^1, eps^2, ... in index order. That basis is then
/// lex-feasible and every later basis reached by pivoting stays so, which
/// rules out ratio-test ties and cycling.
class Tableau {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  static Tableau at_basis(std::shared_ptr<const LinearProgram> lp, std::vector<std::size_t> basis,
                          bool lexicographic = true) {
    return build(std::move(lp), std::move(basis), lexicographic, nullptr);
  }

  /// Same problem and perturbation as `anchor`, at another basis. Used to
  /// compare lexicographic objectives of bases met along one run.
  static Tableau rebased(const Tableau& anchor, std::vector<std::size_t> basis) {
    return build(anchor.lp_, std::move(basis), anchor.lex_, &anchor.perturbation_);
  }

  const LinearProgram& lp() const noexcept { return *lp_; }

  const std::shared_ptr<const LinearProgram>& lp_ptr() const noexcept { return lp_; }

  /// basis()[p] is the row tight at position p.
  const std::vector<std::size_t>& basis() const noexcept { return basis_; }

  std::vector<std::size_t> sorted_basis() const {
    auto s = basis_;
    std::sort(s.begin(), s.end());
    return s;
  }

  bool in_basis(std::size_t row) const { return position_.at(row) != npos; }
  std::size_t position_of(std::size_t row) const { return position_.at(row); }

  const Vector& vertex() const noexcept { return x_; }
  Rational value() const { return lp_->value(x_); }
  std::size_t pivot_count() const noexcept { return pivots_; }
  bool lexicographic() const noexcept { return lex_; }
  const Perturbation& perturbation() const noexcept { return perturbation_; }

  /// Multipliers by basis position: y^T A_B = c^T.
  const Vector& duals() const noexcept { return y_; }

  /// Full-length dual vector supported on the basis rows.
  Vector dual_solution() const {
    Vector y(lp_->rows());
    for (std::size_t p = 0; p < basis_.size(); ++p) y[basis_[p]] = y_[p];
    return y;
  }

  /// Rate of objective change when the tight row `row` is relaxed.
  Rational reduced_cost(std::size_t row) const { return -y_[require_basic(row)]; }

  /// Edge direction leaving the hyperplane of tight row `row`.
  Vector edge_direction(std::size_t row) const {
    Vector dir = columns_[require_basic(row)];
    for (auto& v : dir) v = -v;
    return dir;
  }

  /// A_j A_B^{-1}, by basis position.
  Vector row_in_basis(std::size_t j) const {
    const std::size_t d = basis_.size();
    Vector w(d);
    for (std::size_t p = 0; p < d; ++p) w[p] = LinearProgram::dot(lp_->row(j), columns_[p]);
    return w;
  }

  /// Perturbed slack of a non-tight row.
  LexValue lex_slack(std::size_t j) const { return lex_slack(j, row_in_basis(j)); }

  LexValue lex_objective() const {
    LexValue v(perturbation_.terms + 1);
    v[0] = value();
    for (std::size_t p = 0; p < basis_.size(); ++p) {
      auto k = perturbation_.order[basis_[p]];
      if (k) v[k] += y_[p];
    }
    return v;
  }

  /// Minimum-ratio row when relaxing `entering`; nullopt if the edge is a ray.
  std::optional<std::size_t> leaving_row(std::size_t entering) const {
    const std::size_t p = require_basic(entering);
    std::optional<std::size_t> best;
    Rational best_ratio;
    LexValue best_lex;
    for (std::size_t j = 0; j < lp_->rows(); ++j) {
      if (position_[j] != npos) continue;
      Vector w = row_in_basis(j);
      const Rational rate = -w[p];
      if (rate <= 0) continue;
      if (lex_) {
        LexValue ratio = lex_slack(j, w);
        for (auto& v : ratio) v /= rate;
        if (!best || lex_compare(ratio, best_lex) < 0) {
          best = j;
          best_lex = std::move(ratio);
        }
      } else {
        Rational ratio = (lp_->rhs()[j] - lp_->row_activity(j, x_)) / rate;
        if (!best || ratio < best_ratio) {
          best = j;
          best_ratio = std::move(ratio);
        }
      }
    }
    return best;
  }

  /// Swaps tight row `entering` out for `leaving`. No improvement or ratio
  /// checks; the result is a basis as long as the exchange is nonsingular.
  friend Tableau exchange(const Tableau& t, std::size_t entering, std::size_t leaving) {
    const std::size_t p = t.require_basic(entering);
    if (t.position_.at(leaving) != Tableau::npos)
      throw Error(ErrorKind::InvalidInput, "leaving row is already tight");
    const Vector w = t.row_in_basis(leaving);
    if (w[p] == 0) throw Error(ErrorKind::InvalidInput, "exchange would make the basis singular");
    Tableau n = t;
    const std::size_t d = n.basis_.size();
    for (auto& v : n.columns_[p]) v /= w[p];
    for (std::size_t q = 0; q < d; ++q) {
      if (q == p || w[q] == 0) continue;
      for (std::size_t k = 0; k < d; ++k) n.columns_[q][k] -= n.columns_[p][k] * w[q];
    }
    n.position_[entering] = Tableau::npos;
    n.position_[leaving] = p;
    n.basis_[p] = leaving;
    ++n.pivots_;
    n.refresh();
    return n;
  }

 private:
  Tableau() = default;

  static Tableau build(std::shared_ptr<const LinearProgram> lp, std::vector<std::size_t> basis, bool lexicographic,
                       const Perturbation* fixed) {
    const std::size_t d = lp->variables();
    if (basis.size() != d)
      throw Error(ErrorKind::InvalidInput, "basis must contain exactly d = " + std::to_string(d) + " rows");
    Matrix rows;
    for (auto r : basis) {
      if (r >= lp->rows()) throw Error(ErrorKind::InvalidInput, "basis row out of range");
      rows.push_back(lp->row(r));
    }
    auto inv = linalg::inverse(rows);
    if (!inv) throw Error(ErrorKind::NotPointed, "basis rows are linearly dependent");
    Tableau t;
    t.lp_ = std::move(lp);
    t.basis_ = std::move(basis);
    t.lex_ = lexicographic;
    t.columns_.assign(d, Vector(d));
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t k = 0; k < d; ++k) t.columns_[p][k] = (*inv)[k][p];
    t.position_.assign(t.lp_->rows(), npos);
    for (std::size_t p = 0; p < d; ++p) {
      if (t.position_[t.basis_[p]] != npos) throw Error(ErrorKind::InvalidInput, "basis repeats a row");
      t.position_[t.basis_[p]] = p;
    }
    if (fixed) {
      t.perturbation_ = *fixed;
    } else {
      t.perturbation_.order.assign(t.lp_->rows(), 0);
      if (lexicographic) {
        for (std::size_t j = 0; j < t.lp_->rows(); ++j)
          if (t.position_[j] == npos) t.perturbation_.order[j] = ++t.perturbation_.terms;
      }
    }
    t.refresh();
    return t;
  }

  std::size_t require_basic(std::size_t row) const {
    if (row >= position_.size() || position_[row] == npos)
      throw Error(ErrorKind::InvalidInput, "row " + std::to_string(row) + " is not tight at this vertex");
    return position_[row];
  }

  LexValue lex_slack(std::size_t j, const Vector& w) const {
    LexValue s(perturbation_.terms + 1);
    s[0] = lp_->rhs()[j] - lp_->row_activity(j, x_);
    if (auto k = perturbation_.order[j]) s[k] += 1;
    for (std::size_t p = 0; p < basis_.size(); ++p) {
      auto k = perturbation_.order[basis_[p]];
      if (k) s[k] -= w[p];
    }
    return s;
  }

  void refresh() {
    const std::size_t d = basis_.size();
    x_.assign(d, Rational(0));
    y_.assign(d, Rational(0));
    for (std::size_t p = 0; p < d; ++p) {
      const Rational& bp = lp_->rhs()[basis_[p]];
      for (std::size_t k = 0; k < d; ++k) x_[k] += columns_[p][k] * bp;
      y_[p] = LinearProgram::dot(lp_->objective(), columns_[p]);
    }
  }

  std::shared_ptr<const LinearProgram> lp_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> position_;
  Matrix columns_;  // columns_[p] = A_B^{-1} e_p
  Vector x_;
  Vector y_;
  Perturbation perturbation_;
  std::size_t pivots_ = 0;
  bool lex_ = true;
};

/// One simplex pivot: relax tight row `entering` and stop at the blocking row
/// chosen by the (lexicographic) minimum-ratio test.
inline Tableau pivot_step(const Tableau& t, std::size_t entering, bool force = false) {
  if (!force && t.reduced_cost(entering) <= 0)
    throw Error(ErrorKind::NotImproving, "row " + std::to_string(entering) + " has nonpositive reduced cost");
  auto leaving = t.leaving_row(entering);
  if (!leaving)
    throw Error(ErrorKind::NoBlockingRow, "relaxing row " + std::to_string(entering) + " gives an unbounded edge");
  return exchange(t, entering, *leaving);
}

}  // namespace pivotlab::lp
