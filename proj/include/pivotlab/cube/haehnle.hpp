#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/json_util.hpp"

namespace pivotlab::cube {

/// Exponent vector of a monomial in n variables.
using Monomial = std::vector<unsigned>;

struct MonomialFamily {
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<std::vector<Monomial>> families;

  std::size_t size() const noexcept { return families.size(); }

  void validate() const {
    std::vector<Monomial> seen;
    for (const auto& f : families) {
      if (f.empty()) throw Error(ErrorKind::InvalidInput, "families must be nonempty");
      for (const auto& m : f) {
        if (m.size() != n) throw Error(ErrorKind::InvalidInput, "exponent vector length differs from n");
        unsigned deg = 0;
        for (auto e : m) deg += e;
        if (deg != d) throw Error(ErrorKind::InvalidInput, "monomial degree differs from d");
        seen.push_back(m);
      }
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw Error(ErrorKind::InvalidInput, "families are not pairwise disjoint");
  }
};

/// gcd(a, b) divides c.
inline bool gcd_divides(const Monomial& a, const Monomial& b, const Monomial& c) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::min(a[i], b[i]) > c[i]) return false;
  return true;
}

struct HaehnleViolation {
  std::size_t i = 0, j = 0, k = 0;  // 0-based family indices, i < j < k
  Monomial m_i, m_k;
};

struct HaehnleCheck {
  bool valid = true;
  std::optional<HaehnleViolation> violation;
};

inline HaehnleCheck haehnle_verify(const MonomialFamily& fam) {
  fam.validate();
  const auto& F = fam.families;
  for (std::size_t i = 0; i < F.size(); ++i)
    for (std::size_t k = i + 2; k < F.size(); ++k)
      for (const auto& a : F[i])
        for (const auto& b : F[k])
          for (std::size_t j = i + 1; j < k; ++j) {
            const bool ok =
                std::any_of(F[j].begin(), F[j].end(), [&](const Monomial& c) { return gcd_divides(a, b, c); });
            if (!ok) return {false, HaehnleViolation{i, j, k, a, b}};
          }
  return {};
}

/// All degree-d monomials in n variables, lexicographically descending in
/// the exponent of x_1 first.
inline std::vector<Monomial> all_monomials(std::size_t d, std::size_t n) {
  std::vector<Monomial> out;
  if (n == 0) return out;
  Monomial m(n, 0);
  auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
    if (var + 1 == n) {
      m[var] = left;
      out.push_back(m);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      m[var] = e;
      self(self, var + 1, left - e);
    }
    m[var] = 0;
  };
  rec(rec, 0, static_cast<unsigned>(d));
  return out;
}

inline std::size_t monomial_count(std::size_t d, std::size_t n) {
  if (n == 0) return 0;
  std::size_t c = 1;  // C(d+n-1, d), capped to stay small
  for (std::size_t i = 1; i <= d; ++i) {
    c = c * (n - 1 + i) / i;
    if (c > 1'000'000) return c;
  }
  return c;
}

/// Family k (k = d..nd) holds every monomial x_{i_1}...x_{i_d} with index
/// sum i_1+...+i_d = k; t = d(n-1)+1.
inline MonomialFamily index_sum_family(std::size_t d, std::size_t n) {
  MonomialFamily fam{d, n, {}};
  fam.families.resize(d * (n - 1) + 1);
  for (auto& m : all_monomials(d, n)) {
    std::size_t s = 0;
    for (std::size_t v = 0; v < n; ++v) s += m[v] * (v + 1);
    fam.families[s - d].push_back(std::move(m));
  }
  for (auto& f : fam.families) std::sort(f.begin(), f.end());
  return fam;
}

/// One monomial per family walking x_1^d, x_1^{d-1}x_2, ..., x_n^d.
inline MonomialFamily path_family(std::size_t d, std::size_t n) {
  MonomialFamily fam{d, n, {}};
  for (std::size_t k = d; k <= n * d; ++k) {
    const std::size_t i = k / d - 1, l = k % d;
    Monomial m(n, 0);
    m[i] = static_cast<unsigned>(d - l);
    if (l > 0) m[i + 1] = static_cast<unsigned>(l);
    fam.families.push_back({m});
  }
  return fam;
}

struct HaehnleSearchResult {
  std::size_t t = 0;
  MonomialFamily witness;
  std::size_t states = 0;
};

inline constexpr std::size_t kHaehnleMonomialBudget = 12;

/// Longest valid family sequence over the degree-d monomials in n variables.
///
/// Families are appended in order. Whether a monomial b may still appear in
/// a later family depends only on the monomials used so far and on the newly
/// appended family X: every used a needs gcd(a,b) to divide some member of X.
/// So the state is (used, allowed) and the search is memoized on it.
inline HaehnleSearchResult haehnle_search(std::size_t d, std::size_t n) {
  if (d < 1 || n < 1) throw Error(ErrorKind::InvalidInput, "need d >= 1 and n >= 1");
  if (monomial_count(d, n) > kHaehnleMonomialBudget)
    throw Error(ErrorKind::TooLarge, "more than 12 monomials; exhaustive search refused");
  const auto mons = all_monomials(d, n);
  const std::size_t M = mons.size();
  const std::uint32_t full = (std::uint32_t{1} << M) - 1;
  // covers[a][b] = members c with gcd(a,b) | c
  std::vector<std::vector<std::uint32_t>> covers(M, std::vector<std::uint32_t>(M, 0));
  for (std::size_t a = 0; a < M; ++a)
    for (std::size_t b = 0; b < M; ++b)
      for (std::size_t c = 0; c < M; ++c)
        if (gcd_divides(mons[a], mons[b], mons[c])) covers[a][b] |= std::uint32_t{1} << c;

  auto still_allowed = [&](std::uint32_t used, std::uint32_t allowed, std::uint32_t X) {
    std::uint32_t out = 0;
    for (std::uint32_t rest = allowed; rest; rest &= rest - 1) {
      const auto b = static_cast<std::size_t>(std::countr_zero(rest));
      bool ok = true;
      for (std::uint32_t u = used; u && ok; u &= u - 1)
        ok = (covers[static_cast<std::size_t>(std::countr_zero(u))][b] & X) != 0;
      if (ok) out |= std::uint32_t{1} << b;
    }
    return out;
  };

  std::unordered_map<std::uint64_t, std::uint8_t> memo;
  auto best = [&](auto&& self, std::uint32_t used, std::uint32_t allowed) -> std::size_t {
    allowed &= ~used;
    if (allowed == 0) return 0;
    const std::uint64_t key = (std::uint64_t{used} << 32) | allowed;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t top = 0;
    const std::size_t cap = static_cast<std::size_t>(std::popcount(allowed));
    for (std::uint32_t X = allowed; X && top < cap; X = (X - 1) & allowed) {
      const auto v = 1 + self(self, used | X, still_allowed(used, allowed, X));
      top = std::max(top, v);
    }
    memo.emplace(key, static_cast<std::uint8_t>(top));
    return top;
  };

  HaehnleSearchResult res;
  res.t = best(best, 0, full);
  res.witness = MonomialFamily{d, n, {}};
  std::uint32_t used = 0, allowed = full;
  for (std::size_t left = res.t; left > 0; --left) {
    allowed &= ~used;
    // Largest-first scan of subsets; take the first one that keeps the optimum.
    for (std::uint32_t X = allowed; X; X = (X - 1) & allowed) {
      const auto next = still_allowed(used, allowed, X);
      if (1 + best(best, used | X, next) == left) {
        std::vector<Monomial> fam;
        for (std::uint32_t r = X; r; r &= r - 1) fam.push_back(mons[static_cast<std::size_t>(std::countr_zero(r))]);
        res.witness.families.push_back(std::move(fam));
        used |= X;
        allowed = next;
        break;
      }
    }
  }
  res.states = memo.size();
  return res;
}

// {"d":int, "n":int, "families":[[[e_1,...,e_n], ...], ...]}

inline Json to_json(const MonomialFamily& f) {
  return Json{{"d", f.d}, {"n", f.n}, {"families", f.families}};
}

inline MonomialFamily monomial_family_from_json(const Json& j) {
  try {
    MonomialFamily f{j.at("d").get<std::size_t>(), j.at("n").get<std::size_t>(),
                     j.at("families").get<std::vector<std::vector<Monomial>>>()};
    f.validate();
    return f;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("monomial family: ") + e.what());
  }
}

}  // namespace pivotlab::cube
