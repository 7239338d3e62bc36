#pragma once

// Cartesian-tree Hamming distance, capped at k+1.
//
// chd_k(window, pattern, k) returns the minimum number of positions of
// `window` that must be substituted (with arbitrary real values) so that the
// result CT-matches `pattern`, or k+1 if that minimum exceeds k.
//
// The computation walks the pattern's Cartesian tree.  For every node v we
// keep a row of k+1 entries: row[x] is the largest value the subtree's root
// slot may take when at most x substitutions are spent inside the subtree
// (-inf band: infeasible, +inf band: unconstrained).  A parent row is one
// max-min convolution of its children's rows (left side shifted down by one
// to force strict inequality across the left edge; ties are allowed on the
// right edge, which realises the leftmost-minimum convention) followed by an
// in-place transform that decides whether the node keeps the window's value
// or is substituted.  Rows are monotone in x, so the convolution stays in
// the linear-time regime of convolve.hpp.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include "convolve.hpp"
#include "core.hpp"

namespace ctmatch {

// Pattern-side preprocessing shared by every window: doubled dense ranks,
// the Cartesian tree, and a node schedule ordered by subtree size (ties by
// position).  Children have strictly smaller subtrees, so each node is
// scheduled after both of its children.
struct ChdPattern {
  std::vector<Rank> ranks;
  CartesianTree tree;
  std::vector<Pos> order;
  std::vector<Pos> subtree_size;

  explicit ChdPattern(std::vector<Rank> compressed_ranks)
      : ranks(std::move(compressed_ranks)) {
    require_input(!ranks.empty(), "ChdPattern: pattern must be non-empty");
    tree = build_cartesian_tree(std::span<const Rank>(ranks));
    const std::size_t m = ranks.size();
    subtree_size.assign(m, 1);

    // Iterative post-order to accumulate subtree sizes.
    std::vector<Pos> stack;
    std::vector<unsigned char> expanded(m, 0);
    stack.push_back(tree.root);
    while (!stack.empty()) {
      Pos v = stack.back();
      if (!expanded[static_cast<std::size_t>(v)]) {
        expanded[static_cast<std::size_t>(v)] = 1;
        if (tree.left[static_cast<std::size_t>(v)] >= 0)
          stack.push_back(tree.left[static_cast<std::size_t>(v)]);
        if (tree.right[static_cast<std::size_t>(v)] >= 0)
          stack.push_back(tree.right[static_cast<std::size_t>(v)]);
        continue;
      }
      stack.pop_back();
      Pos l = tree.left[static_cast<std::size_t>(v)];
      Pos r = tree.right[static_cast<std::size_t>(v)];
      if (l >= 0) subtree_size[static_cast<std::size_t>(v)] += subtree_size[static_cast<std::size_t>(l)];
      if (r >= 0) subtree_size[static_cast<std::size_t>(v)] += subtree_size[static_cast<std::size_t>(r)];
    }

    // Counting sort by subtree size keeps the schedule stable in position.
    std::vector<std::size_t> bucket(m + 2, 0);
    for (std::size_t v = 0; v < m; ++v)
      ++bucket[static_cast<std::size_t>(subtree_size[v])];
    std::size_t acc = 0;
    for (std::size_t s = 1; s <= m; ++s) {
      std::size_t cnt = bucket[s];
      bucket[s] = acc;
      acc += cnt;
    }
    order.assign(m, 0);
    for (std::size_t v = 0; v < m; ++v)
      order[bucket[static_cast<std::size_t>(subtree_size[v])]++] = static_cast<Pos>(v);
    assert(order.back() == tree.root);
  }

  std::size_t size() const { return ranks.size(); }
};

// Reusable buffers; one per thread.
struct ChdWorkspace {
  std::vector<Ext> rows;
  std::vector<Ext> shifted;
};

// Core DP.  `window` must hold ranks compressed with a gap of at least k+2
// (see chd_rank_gap) so that chains of substituted values have room between
// kept ones; a subspan of such a rank-compressed text qualifies.  Returns
// CHd capped at k+1.
inline int chd_run(const ChdPattern& pattern, std::span<const Rank> window,
                   int k, ChdWorkspace& ws) {
  const std::size_t m = pattern.size();
  assert(window.size() == m);
  assert(k >= 0);
#ifdef CTMATCH_EXPENSIVE_CHECKS
  for (Rank v : window) assert(v % 2 == 0);
#endif
  const std::size_t width = static_cast<std::size_t>(k) + 1;
  if (ws.rows.size() < m * width) ws.rows.resize(m * width);
  if (ws.shifted.size() < width) ws.shifted.resize(width);
  Ext* rows = ws.rows.data();
  Ext* shifted = ws.shifted.data();

  for (Pos v : pattern.order) {
    const std::size_t vu = static_cast<std::size_t>(v);
    Ext* row = rows + vu * width;
    const Ext mu = window[vu];
    const Pos l = pattern.tree.left[vu];
    const Pos r = pattern.tree.right[vu];

    if (l < 0 && r < 0) {
      // Leaf: without substitution the slot holds exactly mu; one
      // substitution makes it unconstrained.
      row[0] = mu;
      for (std::size_t x = 1; x < width; ++x) row[x] = kPosInf;
    } else {
      // Bound on the slot value when v itself is substituted: spend budget
      // across the children, stay strictly below the left subtree and at
      // most at the right subtree's level.
      if (l >= 0 && r >= 0) {
        const Ext* row_l = rows + static_cast<std::size_t>(l) * width;
        const Ext* row_r = rows + static_cast<std::size_t>(r) * width;
        for (std::size_t x = 0; x < width; ++x) shifted[x] = row_l[x] - 1;
        maxmin_convolve_core(shifted, row_r, width, row);
      } else if (r < 0) {
        const Ext* row_l = rows + static_cast<std::size_t>(l) * width;
        for (std::size_t x = 0; x < width; ++x) row[x] = row_l[x] - 1;
      } else {
        const Ext* row_r = rows + static_cast<std::size_t>(r) * width;
        for (std::size_t x = 0; x < width; ++x) row[x] = row_r[x];
      }
      // In place, descending so row[x-1] is still the pre-transform bound:
      // either substitute v (costs one, slot raised to the bound) or keep
      // mu (free, feasible only if mu fits under the bound).
      for (std::size_t x = width; x-- > 0;) {
        const Ext bound = row[x];
        const Ext with_sub = (x > 0) ? row[x - 1] : kNegInf;
        row[x] = (mu <= bound) ? std::max(with_sub, mu) : with_sub;
      }
    }

#ifdef CTMATCH_EXPENSIVE_CHECKS
    for (std::size_t x = 1; x < width; ++x) assert(row[x - 1] <= row[x]);
#endif
    // Infeasible even with the whole budget at some subtree: the full
    // pattern can only be worse.
    if (ext_is_neg_inf(row[static_cast<std::size_t>(k)])) return k + 1;
  }

  const Ext* root_row = rows + static_cast<std::size_t>(pattern.tree.root) * width;
  for (std::size_t x = 0; x < width; ++x)
    if (!ext_is_neg_inf(root_row[x])) return static_cast<int>(x);
  return k + 1;
}

// Checked entry point; `window` is the string being edited.
template <class T>
int chd_k(std::span<const T> window, std::span<const T> pattern, int k) {
  require_input(k >= 0, "chd_k: k must be non-negative");
  require_input(!pattern.empty(), "chd_k: pattern must be non-empty");
  require_input(window.size() == pattern.size(),
                "chd_k: window and pattern lengths differ");
  ChdPattern prepared(rank_compress(pattern));
  std::vector<Rank> window_ranks = rank_compress(window, chd_rank_gap(k));
  ChdWorkspace ws;
  return chd_run(prepared, std::span<const Rank>(window_ranks), k, ws);
}

template <class T>
int chd_k(const std::vector<T>& window, const std::vector<T>& pattern, int k) {
  return chd_k(std::span<const T>(window), std::span<const T>(pattern), k);
}

}  // namespace ctmatch
