#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/json_util.hpp"
#include "pivotlab/lp/linear_program.hpp"
#include "pivotlab/pivot/instances.hpp"
#include "pivotlab/rational.hpp"

namespace pivotlab::cube {

/// Vertex of the d-cube; bit i is coordinate i.
using VertexId = std::uint32_t;

inline constexpr std::size_t kMaxDimension = 24;
inline constexpr std::size_t kMaxValidateDimension = 16;

/// Subcube with the coordinates in `free_mask` free and the others fixed to
/// the corresponding bits of `fixed_bits`.
struct SubcubeFace {
  std::uint32_t free_mask = 0;
  std::uint32_t fixed_bits = 0;

  std::size_t dimension() const { return static_cast<std::size_t>(std::popcount(free_mask)); }
  bool contains(VertexId v) const { return (v & ~free_mask) == fixed_bits; }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    std::uint32_t sub = 0;
    do {
      out.push_back(fixed_bits | sub);
      sub = (sub - free_mask) & free_mask;
    } while (sub != 0);
    return out;
  }

  friend bool operator==(const SubcubeFace&, const SubcubeFace&) = default;
};

/// Total order on the 2^d cube vertices: rank[v] is the position of v.
/// Edges point toward the higher rank, so the orientation is acyclic.
class CubeOrientation {
 public:
  CubeOrientation(std::size_t d, std::vector<std::uint32_t> rank) : d_(d), rank_(std::move(rank)) {
    if (d < 1 || d > kMaxDimension) throw Error(ErrorKind::InvalidInput, "cube dimension must be in 1..24");
    if (rank_.size() != (std::size_t{1} << d))
      throw Error(ErrorKind::InvalidInput, "rank table must have 2^d entries");
    by_rank_.assign(rank_.size(), 0);
    std::vector<bool> seen(rank_.size(), false);
    for (VertexId v = 0; v < rank_.size(); ++v) {
      if (rank_[v] >= rank_.size() || seen[rank_[v]])
        throw Error(ErrorKind::InvalidInput, "rank table is not a permutation");
      seen[rank_[v]] = true;
      by_rank_[rank_[v]] = v;
    }
  }

  /// Ranks by ascending value; values must be pairwise distinct.
  template <typename Value>
  static CubeOrientation from_values(std::size_t d, const std::vector<Value>& values) {
    std::vector<VertexId> order(values.size());
    std::iota(order.begin(), order.end(), VertexId{0});
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return values[a] < values[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
      if (!(values[order[i - 1]] < values[order[i]]))
        throw Error(ErrorKind::InvalidInput, "vertex values must be distinct to define a total order");
    std::vector<std::uint32_t> rank(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<std::uint32_t>(r);
    return CubeOrientation(d, std::move(rank));
  }

  std::size_t dimension() const noexcept { return d_; }
  std::size_t size() const noexcept { return rank_.size(); }
  std::uint32_t rank(VertexId v) const { return rank_[v]; }
  VertexId vertex_at(std::uint32_t r) const { return by_rank_[r]; }
  VertexId top() const { return by_rank_.back(); }
  const std::vector<std::uint32_t>& ranks() const noexcept { return rank_; }

  bool improves(VertexId from, VertexId to) const { return rank_[to] > rank_[from]; }

  /// Coordinates whose flip leads to a lower-ranked vertex.
  std::uint32_t down_mask(VertexId v) const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < d_; ++i)
      if (rank_[v ^ (VertexId{1} << i)] < rank_[v]) m |= std::uint32_t{1} << i;
    return m;
  }

  friend bool operator==(const CubeOrientation&, const CubeOrientation&) = default;

 private:
  std::size_t d_;
  std::vector<std::uint32_t> rank_;
  std::vector<VertexId> by_rank_;
};

struct AofCheck {
  bool valid = true;
  std::optional<SubcubeFace> witness;       // a face with two or more local maxima
  std::vector<VertexId> witness_maxima;
};

/// An ordering is an abstract objective function iff every subcube has
/// exactly one local maximum. A vertex v is a local maximum of the face with
/// free set T through v exactly when T is a subset of down_mask(v), so the
/// check enumerates those pairs and counts maxima per face (faces are keyed
/// in base 3: digit 2 = free coordinate).
inline AofCheck validate_aof(const CubeOrientation& o) {
  const std::size_t d = o.dimension();
  if (d > kMaxValidateDimension) throw Error(ErrorKind::TooLarge, "validate_aof supports d <= 16");
  std::vector<std::uint32_t> pow3(d + 1, 1);
  for (std::size_t i = 1; i <= d; ++i) pow3[i] = pow3[i - 1] * 3;
  std::vector<std::uint8_t> count(pow3[d], 0);
  std::optional<std::uint32_t> bad;
  for (VertexId v = 0; v < o.size() && !bad; ++v) {
    std::uint32_t base = 0;
    for (std::size_t i = 0; i < d; ++i) base += ((v >> i) & 1u) * pow3[i];
    const std::uint32_t down = o.down_mask(v);
    std::uint32_t sub = 0;
    do {
      std::uint32_t key = base;
      for (std::size_t i = 0; i < d; ++i)
        if (sub >> i & 1u) key += (2 - ((v >> i) & 1u)) * pow3[i];
      if (++count[key] > 1) {
        bad = key;
        break;
      }
      sub = (sub - down) & down;
    } while (sub != 0);
  }
  if (!bad) return {};
  SubcubeFace face;
  std::uint32_t key = *bad;
  for (std::size_t i = 0; i < d; ++i, key /= 3) {
    const std::uint32_t digit = key % 3;
    if (digit == 2) face.free_mask |= 1u << i;
    else if (digit == 1) face.fixed_bits |= 1u << i;
  }
  AofCheck out{false, face, {}};
  for (auto v : face.vertices())
    if ((face.free_mask & ~o.down_mask(v)) == 0) out.witness_maxima.push_back(v);
  return out;
}

/// Orientation from a linear objective sum_i w_i x_i; w must be generic.
inline CubeOrientation linear_orientation(std::size_t d, std::span<const Rational> weights) {
  if (weights.size() != d) throw Error(ErrorKind::InvalidInput, "need one weight per coordinate");
  std::vector<Rational> values(std::size_t{1} << d);
  for (VertexId v = 0; v < values.size(); ++v)
    for (std::size_t i = 0; i < d; ++i)
      if (v >> i & 1u) values[v] += weights[i];
  return CubeOrientation::from_values(d, values);
}

/// Order 0 < 1 < ... in binary value, from weights 2^i.
inline CubeOrientation binary_orientation(std::size_t d) {
  std::vector<std::uint32_t> rank(std::size_t{1} << d);
  std::iota(rank.begin(), rank.end(), 0u);
  return CubeOrientation(d, std::move(rank));
}

/// Order induced by the Klee-Minty objective x_d on its vertices. Cube
/// vertex v corresponds to the LP vertex where row i is tight at its upper
/// bound when bit i is set and at its lower bound otherwise; the LP rows are
/// triangular, so the vertex is found by forward substitution.
inline CubeOrientation klee_minty_orientation(std::size_t d, const Rational& eps = Rational(1, 3)) {
  if (d < 1 || d > 20) throw Error(ErrorKind::InvalidInput, "Klee-Minty orientation needs 1 <= d <= 20");
  const auto lp = pivot::klee_minty(d, eps);
  std::vector<Rational> values(std::size_t{1} << d);
  Vector x(d);
  for (VertexId v = 0; v < values.size(); ++v) {
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t row = (v >> i & 1u) ? d + i : i;
      Rational rest = lp.rhs()[row];
      if (i > 0) rest -= lp.row(row)[i - 1] * x[i - 1];
      x[i] = rest / lp.row(row)[i];
    }
    values[v] = lp.value(x);
  }
  return CubeOrientation::from_values(d, values);
}

// {"d":int, "rank":[int,...]}, rank[v] = position of vertex v.

inline Json to_json(const CubeOrientation& o) { return Json{{"d", o.dimension()}, {"rank", o.ranks()}}; }

inline CubeOrientation orientation_from_json(const Json& j) {
  try {
    return CubeOrientation(j.at("d").get<std::size_t>(), j.at("rank").get<std::vector<std::uint32_t>>());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("orientation: ") + e.what());
  }
}

}  // namespace pivotlab::cube
