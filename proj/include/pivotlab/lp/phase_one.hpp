#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/linalg.hpp"
#include "pivotlab/lp/linear_program.hpp"
#include "pivotlab/lp/tableau.hpp"

namespace pivotlab::lp {

/// Farkas witness: y >= 0, y^T A = 0, y^T b < 0.
struct Infeasible {
  Vector farkas;
};

using PhaseOneResult = std::variant<Tableau, Infeasible>;

inline bool verify_farkas(const LinearProgram& lp, const Vector& y) {
  if (y.size() != lp.rows()) return false;
  Rational yb = 0;
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    if (y[i] < 0) return false;
    yb += y[i] * lp.rhs()[i];
  }
  for (std::size_t k = 0; k < lp.variables(); ++k) {
    Rational s = 0;
    for (std::size_t i = 0; i < lp.rows(); ++i) s += y[i] * lp.row(i)[k];
    if (s != 0) return false;
  }
  return yb < 0;
}

namespace detail {

/// Largest-reduced-cost pivoting to optimality on a bounded problem.
inline Tableau climb(Tableau t) {
  for (;;) {
    std::optional<std::size_t> entering;
    Rational best = 0;
    for (auto r : t.sorted_basis()) {
      Rational rc = t.reduced_cost(r);
      if (rc > best) {
        best = rc;
        entering = r;
      }
    }
    if (!entering) return t;
    t = pivot_step(t, *entering);
  }
}

}  // namespace detail

/// Finds a feasible vertex, or a Farkas certificate of infeasibility.
///
/// The starting basis is the lowest-index set of d independent rows. If its
/// vertex violates some rows, an auxiliary problem in (x, t) maximizes -t
/// under A_j x - t <= b_j for the rows outside that basis, starting from the
/// vertex where t equals the largest violation.
inline PhaseOneResult phase_one(std::shared_ptr<const LinearProgram> lp, bool lexicographic = true) {
  const std::size_t d = lp->variables();
  const std::size_t n = lp->rows();
  auto start = linalg::independent_rows(lp->matrix(), d);
  if (start.size() < d)
    throw Error(ErrorKind::NotPointed, "rank of A is below d; the feasible region has no vertex");

  Tableau initial = Tableau::at_basis(lp, start, lexicographic);
  std::optional<std::size_t> worst;
  Rational violation = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Rational v = lp->row_activity(j, initial.vertex()) - lp->rhs()[j];
    if (v > violation) {
      violation = v;
      worst = j;
    }
  }
  if (!worst) return initial;

  std::vector<bool> in_start(n, false);
  for (auto r : start) in_start[r] = true;
  Matrix a(n + 1, Vector(d + 1));
  Vector b(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < d; ++k) a[j][k] = lp->row(j)[k];
    a[j][d] = in_start[j] ? Rational(0) : Rational(-1);
    b[j] = lp->rhs()[j];
  }
  a[n][d] = -1;
  Vector c(d + 1);
  c[d] = -1;
  auto aux = std::make_shared<const LinearProgram>(c, a, b);

  auto aux_basis = start;
  aux_basis.push_back(*worst);
  Tableau opt = detail::climb(Tableau::at_basis(aux, aux_basis, true));

  if (opt.vertex()[d] > 0) {
    Vector y = opt.dual_solution();
    y.resize(n);
    return Infeasible{std::move(y)};
  }
  if (!opt.in_basis(n)) {
    // t = 0 with its bound slack: bring the bound row in by a degenerate swap.
    const Vector w = opt.row_in_basis(n);
    std::optional<std::size_t> out;
    for (auto r : opt.sorted_basis())
      if (w[opt.position_of(r)] != 0) {
        out = r;
        break;
      }
    opt = exchange(opt, *out, n);
  }
  std::vector<std::size_t> rows;
  for (auto r : opt.sorted_basis())
    if (r != n) rows.push_back(r);
  return Tableau::at_basis(lp, rows, lexicographic);
}

inline PhaseOneResult phase_one(const LinearProgram& lp, bool lexicographic = true) {
  return phase_one(std::make_shared<const LinearProgram>(lp), lexicographic);
}

}  // namespace pivotlab::lp
