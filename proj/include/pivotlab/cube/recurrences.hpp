#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/rational.hpp"

namespace pivotlab::cube {

/// f  diameter-style bound         f(d,n) = 2 f(d, floor(n/2)) + f(d-1, n-1)
/// g  Random Facet expected steps  g(d,n) = g(d-1,n-1) + (1/(d-1)) sum_{i<d} g(d,n-i)
/// a  a_1 = 1, a_{n+1} = a_n + a_{ceil(n/2)}
/// b  b_1 = 1, b_{n+1} = b_n + (1/n) sum_{j<=n} b_j
/// h  the conjectured Haehnle bound d(n-1)+1
enum class RecurrenceKind { FKk, GRf, ASeq, BSeq, HaehnleBound };

constexpr std::string_view to_string(RecurrenceKind k) {
  switch (k) {
    case RecurrenceKind::FKk: return "f";
    case RecurrenceKind::GRf: return "g";
    case RecurrenceKind::ASeq: return "a";
    case RecurrenceKind::BSeq: return "b";
    case RecurrenceKind::HaehnleBound: return "h";
  }
  return "?";
}

inline RecurrenceKind parse_recurrence_kind(std::string_view s) {
  if (s == "f") return RecurrenceKind::FKk;
  if (s == "g") return RecurrenceKind::GRf;
  if (s == "a") return RecurrenceKind::ASeq;
  if (s == "b") return RecurrenceKind::BSeq;
  if (s == "h") return RecurrenceKind::HaehnleBound;
  throw Error(ErrorKind::Parse, "unknown recurrence '" + std::string(s) + "' (expected f, g, a, b or h)");
}

constexpr bool is_sequence(RecurrenceKind k) { return k == RecurrenceKind::ASeq || k == RecurrenceKind::BSeq; }

inline constexpr std::size_t kMaxGridD = 32;
inline constexpr std::size_t kMaxGridN = 1000;
inline constexpr std::size_t kMaxSequenceN = 100'000;
inline constexpr std::size_t kDenseBLimit = 20'000;

/// Growth constant used in the check log g(d,2d) <= K sqrt(2d ln d).
inline constexpr double kRandomFacetGrowthK = 1.2;

/// n * C(d + ceil(log2 n), d), the closed form dominating f.
inline Integer f_closed_bound(std::size_t d, std::size_t n) {
  if (n == 0) return 0;
  std::size_t lg = 0;
  while ((std::size_t{1} << lg) < n) ++lg;
  Integer c = 1;
  for (std::size_t i = 1; i <= d; ++i) c = c * (lg + i) / i;
  return c * n;
}

inline Integer haehnle_bound(std::size_t d, std::size_t n) {
  return n == 0 ? Integer(0) : Integer(d) * (n - 1) + 1;
}

/// Values of one recurrence. Two-parameter kinds fill a dense d x n grid
/// (d from 1); sequences keep every term, or only the sampled terms when a
/// stride greater than one was requested.
class RecurrenceTable {
 public:
  RecurrenceKind kind() const noexcept { return kind_; }
  std::size_t d_max() const noexcept { return d_max_; }
  std::size_t n_max() const noexcept { return n_max_; }

  const Rational& at(std::size_t d, std::size_t n) const {
    if (is_sequence(kind_) || d < 1 || d > d_max_ || n > n_max_)
      throw Error(ErrorKind::InvalidInput, "recurrence index out of range");
    return grid_[d][n];
  }

  bool contains(std::size_t n) const { return terms_.count(n) != 0; }

  const Rational& at(std::size_t n) const {
    auto it = terms_.find(n);
    if (it == terms_.end()) throw Error(ErrorKind::InvalidInput, "term " + std::to_string(n) + " not stored");
    return it->second;
  }

  const std::map<std::size_t, Rational>& terms() const noexcept { return terms_; }

  /// Re-evaluates the defining recurrence at every stored entry whose inputs
  /// are stored too.
  bool recheck() const {
    switch (kind_) {
      case RecurrenceKind::FKk:
        for (std::size_t d = 2; d <= d_max_; ++d)
          for (std::size_t n = 2; n <= n_max_; ++n)
            if (grid_[d][n] != 2 * grid_[d][n / 2] + grid_[d - 1][n - 1]) return false;
        return true;
      case RecurrenceKind::GRf:
        for (std::size_t d = 2; d <= d_max_; ++d)
          for (std::size_t n = d; n <= n_max_; ++n) {
            Rational s = 0;
            for (std::size_t i = 1; i < d; ++i) s += grid_[d][n - i];
            if (grid_[d][n] != grid_[d - 1][n - 1] + s / Rational(d - 1)) return false;
          }
        return true;
      case RecurrenceKind::HaehnleBound:
        for (std::size_t d = 1; d <= d_max_; ++d)
          for (std::size_t n = 1; n <= n_max_; ++n)
            if (grid_[d][n] != Rational(haehnle_bound(d, n))) return false;
        return true;
      case RecurrenceKind::ASeq:
        for (const auto& [n, v] : terms_) {
          if (n == 1 || !contains(n - 1) || !contains(n / 2)) continue;
          if (v != at(n - 1) + at(n / 2)) return false;
        }
        return true;
      case RecurrenceKind::BSeq: {
        // b_{n+1} - b_n = S_n / n with S_n = S_{n-1} + b_n, so
        // (n)(b_{n+1} - b_n) - (n-1)(b_n - b_{n-1}) = b_n.
        for (const auto& [n, v] : terms_) {
          if (n < 3 || !contains(n - 1) || !contains(n - 2)) continue;
          const Rational lhs = Rational(n - 1) * (v - at(n - 1)) - Rational(n - 2) * (at(n - 1) - at(n - 2));
          if (lhs != at(n - 1)) return false;
        }
        return true;
      }
    }
    return false;
  }

  friend RecurrenceTable recurrence_table(RecurrenceKind, std::size_t, std::size_t, std::size_t);

 private:
  RecurrenceKind kind_{};
  std::size_t d_max_ = 0;
  std::size_t n_max_ = 0;
  std::vector<std::vector<Rational>> grid_;
  std::map<std::size_t, Rational> terms_;
};

/// Builds a table. For sequences `d_max` is ignored and `stride` > 1 keeps
/// only n = 1, 2, 3, stride multiples and n_max.
inline RecurrenceTable recurrence_table(RecurrenceKind kind, std::size_t d_max, std::size_t n_max,
                                        std::size_t stride = 1) {
  RecurrenceTable t;
  t.kind_ = kind;
  t.n_max_ = n_max;
  if (stride == 0) throw Error(ErrorKind::InvalidInput, "stride must be positive");
  if (is_sequence(kind)) {
    if (n_max < 1) throw Error(ErrorKind::InvalidInput, "sequence needs n_max >= 1");
    if (n_max > kMaxSequenceN) throw Error(ErrorKind::TooLarge, "sequence length above 10^5");
    if (kind == RecurrenceKind::BSeq && stride == 1 && n_max > kDenseBLimit)
      throw Error(ErrorKind::TooLarge, "dense b table above 20000 terms; use a stride");
    auto keep = [&](std::size_t n) { return stride == 1 || n <= 3 || n % stride == 0 || n == n_max; };
    if (kind == RecurrenceKind::ASeq) {
      std::vector<Integer> a(n_max + 1);
      a[1] = 1;
      for (std::size_t n = 1; n < n_max; ++n) a[n + 1] = a[n] + a[(n + 1) / 2];
      for (std::size_t n = 1; n <= n_max; ++n)
        if (keep(n)) t.terms_.emplace(n, Rational(a[n]));
    } else {
      // B_n = (n-1)! b_n and T_n = (n-1)! (b_1 + ... + b_n) stay integral.
      Integer B = 1, T = 1, fact = 1;
      t.terms_.emplace(1, Rational(1));
      for (std::size_t n = 1; n < n_max; ++n) {
        B = B * n + T;
        T = T * n + B;
        fact *= n;
        if (keep(n + 1)) t.terms_.emplace(n + 1, Rational(B, fact));
      }
    }
    return t;
  }
  if (d_max < 1 || d_max > kMaxGridD || n_max > kMaxGridN)
    throw Error(ErrorKind::TooLarge, "grid limited to 1 <= d <= 32 and n <= 1000");
  t.d_max_ = d_max;
  t.grid_.assign(d_max + 1, std::vector<Rational>(n_max + 1));
  auto& g = t.grid_;
  switch (kind) {
    case RecurrenceKind::FKk:
      for (std::size_t d = 1; d <= d_max; ++d)
        for (std::size_t n = 1; n <= n_max; ++n)
          g[d][n] = (d == 1 || n == 1) ? Rational(1) : 2 * g[d][n / 2] + g[d - 1][n - 1];
      break;
    case RecurrenceKind::GRf:
      for (std::size_t n = 1; n <= n_max; ++n) g[1][n] = 1;
      for (std::size_t d = 2; d <= d_max; ++d) {
        Rational window = 0;  // g(d,n-1) + ... + g(d,n-d+1)
        for (std::size_t n = d; n <= n_max; ++n) {
          g[d][n] = g[d - 1][n - 1] + window / Rational(d - 1);
          window += g[d][n];
          window -= g[d][n + 1 - d];
        }
      }
      break;
    case RecurrenceKind::HaehnleBound:
      for (std::size_t d = 1; d <= d_max; ++d)
        for (std::size_t n = 1; n <= n_max; ++n) g[d][n] = Rational(haehnle_bound(d, n));
      break;
    default:
      break;
  }
  return t;
}

}  // namespace pivotlab::cube
