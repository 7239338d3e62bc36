#pragma once
// Sequence primitives for Cartesian-tree matching.
//
// Two sequences match if their Cartesian trees (leftmost minimum at the root,
// built recursively on both sides) coincide.  Instead of trees we work with
// two linear encodings that determine the tree shape:
//
//   PD[i] = distance to the previous value <= x[i]   (0 if none exists)
//   ND[i] = distance to the next value     <  x[i]   (0 if none exists)
//
// The asymmetry (<= on the left, < on the right) realises the leftmost
// tie-break once and for all; equality of either encoding is equivalent to
// equality of the trees.  All functions here index from 0; "none" is -1 for
// previous-smaller-value indices and n for next-smaller-value indices.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctmatch {

using Value = double;
using Rank = std::int64_t;
using Pos = std::ptrdiff_t;

struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require_input(bool ok, const std::string& msg) {
  if (!ok) throw input_error(msg);
}
inline void require_contract(bool ok, const std::string& msg) {
  if (!ok) throw contract_error(msg);
}

// ---- rank compression -------------------------------------------------------

// Spaced dense ranks: equal values share a rank, consecutive distinct values
// are `gap` apart.  The integers in between denote values strictly between
// (or below/above) the inputs; the distance DP lowers a bound by 1 per strict
// tree edge, so a chain of j substituted values fits between two kept ones
// only if gap > j.  Callers that tolerate up to k substitutions must compress
// with gap >= k + 2; order-only consumers take any gap.
template <class T>
std::vector<Rank> rank_compress(std::span<const T> xs, Rank gap = 2) {
  assert(gap >= 1);
  if constexpr (std::is_floating_point_v<T>) {
    for (T v : xs)
      require_input(std::isfinite(v), "rank_compress: non-finite value");
  }
  std::vector<T> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Rank> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), xs[i]);
    out[i] = gap * static_cast<Rank>(it - sorted.begin());
  }
  return out;
}

inline std::vector<Rank> rank_compress(const std::vector<Value>& xs, Rank gap = 2) {
  return rank_compress(std::span<const Value>(xs), gap);
}
inline std::vector<Rank> rank_compress(const std::vector<Rank>& xs, Rank gap = 2) {
  return rank_compress(std::span<const Rank>(xs), gap);
}

// Compression gap wide enough for the distance DP at budget k.
inline Rank chd_rank_gap(int k) { return 2 * (static_cast<Rank>(k) + 1); }

// ---- previous / next smaller values ----------------------------------------

// psv[i] = largest j < i with x[j] <= x[i], else -1.
inline std::vector<Pos> psv_indices(std::span<const Rank> x) {
  std::vector<Pos> out(x.size());
  std::vector<Pos> stack;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (!stack.empty() && x[stack.back()] > x[i]) stack.pop_back();
    out[i] = stack.empty() ? -1 : stack.back();
    stack.push_back(static_cast<Pos>(i));
  }
  return out;
}

// nsv[i] = smallest j > i with x[j] < x[i], else n.
inline std::vector<Pos> nsv_indices(std::span<const Rank> x) {
  const Pos n = static_cast<Pos>(x.size());
  std::vector<Pos> out(x.size());
  std::vector<Pos> stack;
  for (Pos i = n - 1; i >= 0; --i) {
    while (!stack.empty() && x[stack.back()] >= x[i]) stack.pop_back();
    out[i] = stack.empty() ? n : stack.back();
    stack.push_back(i);
  }
  return out;
}

// ---- PD / ND encodings ------------------------------------------------------

inline std::vector<Rank> pd_array(std::span<const Rank> x) {
  std::vector<Rank> out(x.size());
  std::vector<Pos> stack;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (!stack.empty() && x[stack.back()] > x[i]) stack.pop_back();
    out[i] = stack.empty() ? 0 : static_cast<Rank>(static_cast<Pos>(i) - stack.back());
    stack.push_back(static_cast<Pos>(i));
  }
  return out;
}

inline std::vector<Rank> nd_array(std::span<const Rank> x) {
  const Pos n = static_cast<Pos>(x.size());
  std::vector<Rank> out(x.size());
  std::vector<Pos> stack;
  for (Pos i = n - 1; i >= 0; --i) {
    while (!stack.empty() && x[stack.back()] >= x[i]) stack.pop_back();
    out[i] = stack.empty() ? 0 : static_cast<Rank>(stack.back() - i);
    stack.push_back(i);
  }
  return out;
}

// PD of x[pos, pos+len) given PD of x: a reference that would reach left of
// the fragment has no smaller-or-equal value inside it and becomes 0.
inline std::vector<Rank> pd_of_fragment(std::span<const Rank> pd, std::size_t pos,
                                        std::size_t len) {
  require_input(pos + len <= pd.size(), "pd_of_fragment: range out of bounds");
  std::vector<Rank> out(len);
  for (std::size_t t = 0; t < len; ++t) {
    const Rank d = pd[pos + t];
    out[t] = d > static_cast<Rank>(t) ? 0 : d;
  }
  return out;
}

// ND analogue: references beyond the fragment end become 0.
inline std::vector<Rank> nd_of_fragment(std::span<const Rank> nd, std::size_t pos,
                                        std::size_t len) {
  require_input(pos + len <= nd.size(), "nd_of_fragment: range out of bounds");
  std::vector<Rank> out(len);
  for (std::size_t t = 0; t < len; ++t) {
    const Rank d = nd[pos + t];
    out[t] = d > static_cast<Rank>(len - 1 - t) ? 0 : d;
  }
  return out;
}

// ---- tree equality ----------------------------------------------------------

inline bool ct_equal(std::span<const Rank> a, std::span<const Rank> b) {
  require_input(a.size() == b.size(), "ct_equal: length mismatch");
  return pd_array(a) == pd_array(b);
}

// ---- Cartesian tree ---------------------------------------------------------

struct CartesianTree {
  Pos root = -1;
  std::vector<Pos> left, right, parent;  // -1 = none; node id == position

  std::size_t size() const { return left.size(); }
};

// Right-spine stack construction.  Ties never pop: an equal value becomes a
// right descendant of the earlier one, which is exactly the leftmost-minimum
// tie-break.
inline CartesianTree build_cartesian_tree(std::span<const Rank> x) {
  const Pos n = static_cast<Pos>(x.size());
  CartesianTree t;
  t.left.assign(x.size(), -1);
  t.right.assign(x.size(), -1);
  t.parent.assign(x.size(), -1);
  std::vector<Pos> stack;
  for (Pos i = 0; i < n; ++i) {
    Pos last = -1;
    while (!stack.empty() && x[stack.back()] > x[i]) {
      last = stack.back();
      stack.pop_back();
    }
    t.left[i] = last;
    if (last != -1) t.parent[last] = i;
    if (!stack.empty()) {
      t.right[stack.back()] = i;
      t.parent[i] = stack.back();
    }
    stack.push_back(i);
  }
  t.root = stack.empty() ? -1 : stack.front();
  assert(t.root == -1 || t.parent[t.root] == -1);
  return t;
}

// ---- reflection -------------------------------------------------------------

// Order-reversing reflection: position i maps to n-1-i and the next-smaller
// (strict) structure maps onto the previous-smaller-or-equal structure.
// Plain reversal breaks ties the wrong way round, so positions are used as an
// infinitesimal weight before re-ranking: for j > i,
//   x[j] <  x[i]  <->  y[n-1-j] <= y[n-1-i]
//   x[j] >= x[i]  <->  y[n-1-j] >  y[n-1-i].
inline std::vector<Rank> reflect_ranks(std::span<const Rank> x) {
  const Pos n = static_cast<Pos>(x.size());
  const Rank scale = static_cast<Rank>(n) + 1;
  std::vector<Rank> weighted(x.size());
  for (Pos u = 0; u < n; ++u) weighted[u] = scale * x[n - 1 - u] - u;
  return rank_compress(std::span<const Rank>(weighted));
}

}  // namespace ctmatch
