#pragma once

// Max-min convolution of non-decreasing rows in linear time, plus the soft
// "infinite" values the distance rows store.  The infinities sit at +-2^61,
// far away from any finite rank; rows only ever drift by whole-row -1 steps,
// so a value never migrates from one band into another and band membership
// can be tested with a simple threshold.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "core.hpp"

namespace ctmatch {

using Ext = std::int64_t;

inline constexpr Ext kNegInf = -(Ext{1} << 61);
inline constexpr Ext kPosInf = Ext{1} << 61;

inline constexpr bool ext_is_neg_inf(Ext v) { return v < kNegInf / 2; }
inline constexpr bool ext_is_pos_inf(Ext v) { return v > kPosInf / 2; }
inline constexpr bool ext_is_finite(Ext v) { return !ext_is_neg_inf(v) && !ext_is_pos_inf(v); }

// c[i] = max over j <= i of min(a[j], b[i-j]) for non-decreasing a and b of
// equal length; c has the same length and is again non-decreasing.
//
// Let Z[j] = |{l : b[l] < a[j]}|.  The pair (j, i-j) is worth a[j] exactly
// when i-j >= Z[j], i.e. j + Z[j] <= i, and worth b[i-j] otherwise.  With
// BP[i] = max{j : j + Z[j] <= i} (-1 when empty) the best a-flavoured pair is
// a[BP[i]] and the best b-flavoured pair is b[i - BP[i] - 1], because
// j + Z[j] is strictly increasing in j.  Everything merges in one pass.
//
// c must not alias a or b.
inline void maxmin_convolve_core(const Ext* a, const Ext* b, std::size_t len, Ext* c) {
  std::size_t below = 0;  // Z of candidate `next`, monotone across candidates
  std::size_t next = 0;   // bp + 1
  Pos bp = -1;
  for (std::size_t i = 0; i < len; ++i) {
    while (next < len) {
      while (below < len && b[below] < a[next]) ++below;
      if (next + below > i) break;
      bp = static_cast<Pos>(next);
      ++next;
    }
    if (bp < 0) {
      c[i] = b[i];
    } else if (std::cmp_equal(bp, i)) {
      c[i] = a[i];
    } else {
      c[i] = std::max(a[bp], b[i - static_cast<std::size_t>(bp) - 1]);
    }
  }
}

inline std::vector<Ext> maxmin_convolve(std::span<const Ext> a, std::span<const Ext> b) {
  require_input(a.size() == b.size(), "maxmin_convolve: length mismatch");
  for (std::size_t i = 1; i < a.size(); ++i) {
    require_contract(a[i - 1] <= a[i], "maxmin_convolve: first input not non-decreasing");
    require_contract(b[i - 1] <= b[i], "maxmin_convolve: second input not non-decreasing");
  }
  std::vector<Ext> c(a.size());
  if (!a.empty()) maxmin_convolve_core(a.data(), b.data(), a.size(), c.data());
  return c;
}

inline std::vector<Ext> maxmin_convolve(const std::vector<Ext>& a, const std::vector<Ext>& b) {
  return maxmin_convolve(std::span<const Ext>(a), std::span<const Ext>(b));
}

// Same computation with the intermediate arrays kept around, for inspection.
struct ConvolutionState {
  std::vector<Ext> a, b, c;
  std::vector<std::size_t> z;  // z[j] = |{l : b[l] < a[j]}|
  std::vector<Pos> bp;         // bp[i] = max{j : j + z[j] <= i}, -1 when none
};

inline ConvolutionState maxmin_convolve_state(std::span<const Ext> a, std::span<const Ext> b) {
  ConvolutionState st;
  st.c = maxmin_convolve(a, b);
  st.a.assign(a.begin(), a.end());
  st.b.assign(b.begin(), b.end());
  const std::size_t len = a.size();
  st.z.resize(len);
  std::size_t t = 0;
  for (std::size_t j = 0; j < len; ++j) {
    while (t < len && b[t] < a[j]) ++t;
    st.z[j] = t;
  }
  st.bp.assign(len, -1);
  Pos best = -1;
  std::size_t j = 0;
  for (std::size_t i = 0; i < len; ++i) {
    while (j < len && j + st.z[j] <= i) best = static_cast<Pos>(j++);
    st.bp[i] = best;
  }
  return st;
}

}  // namespace ctmatch
