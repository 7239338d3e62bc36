#pragma once
// Approximate Cartesian-tree search: the distance profile
// CHd_k(T[i..i+m) ~> P) for every window start i.
//
// The pattern is analysed once.  Either the analysis collects delta disjoint
// fragments that pairwise do not CT-match ("rainbow") — any window within
// distance k must then contain at least delta-k of them exactly in place,
// which the multi-matcher turns into a small candidate set — or it runs into
// a long block-periodic fragment.  In the periodic case, windows are compared
// blockwise against a 3p reference window.  If the periodic structure breaks
// inside the pattern, a short exactly-matched fragment anchors a few
// candidate alignments, each verified by the distance DP.  If the pattern is
// periodic almost everywhere, the text is first restricted to the one block
// residue that can host occurrences, and for each surviving alignment long
// stretches of matching blocks are trimmed to a constant-size core before
// running the DP; the trim preserves the capped distance exactly.
// Texts longer than 3m/2 are cut into overlapping chunks so that every
// window lies in exactly one chunk.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <utility>

#include "distance.hpp"
#include "match.hpp"

namespace ctmatch {

enum class SearchPath { Auto, Naive, Aperiodic, Periodic };

struct Parameters {
  int constant = 128;              // scale constant in the dispatch thresholds
  std::size_t delta_override = 0;  // 0 = derive from m and k
  SearchPath forced_path = SearchPath::Auto;
  bool verify_runs = false;  // re-verify run decompositions (slow, test aid)
  int threads = 1;
};

// Outcome of the pattern analysis.
struct PatternAnalysis {
  std::size_t delta = 0;
  bool periodic = false;
  // Rainbow outcome: pairwise non-CT-matching fragments
  // pattern[s, s + member_len), disjoint and in increasing order.
  std::vector<std::size_t> member_starts;
  std::size_t member_len = 0;
  // Periodic outcome: fragment of length >= m/(4*delta) whose minimal
  // CT-block-period is `period` (< delta).
  PeriodicFragment fragment{};
  std::size_t period = 0;
};

// A block-aligned region [begin, end) of a host string, cut into blocks of
// length p and classified against a 3p reference window starting at
// ref_begin in the pattern.  A block is good when its surrounding 3p window
// CT-matches the reference; blocks whose window leaves the host are bad.
struct BlockDecomposition {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t p = 0;
  std::size_t ref_begin = 0;
  std::vector<std::size_t> bad;             // bad block starts, sorted
  std::vector<std::size_t> implicitly_bad;  // good blocks poisoned by arrows
};

struct TextRestriction {
  bool no_occurrences = false;
  std::size_t t1 = 0, t2 = 0;  // window starts can only lie in [t1, t2 - m]
  BlockDecomposition blocks;   // classified text region [blocks.begin, blocks.end)
};

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t x) {
  if (x == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  using u128 = unsigned __int128;
  while (r > 0 && static_cast<u128>(r) * r > x) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

// occ[i] = 1 iff s[i, i + |ref|) CT-matches ref.
inline std::vector<unsigned char> occurrence_bitmap(std::span<const Rank> ref,
                                                    std::span<const Rank> s) {
  std::vector<unsigned char> occ(s.size(), 0);
  for (std::size_t o : find_ct_occurrences(ref, s)) occ[o] = 1;
  return occ;
}

// Block [s, s + p) of a host of length `len` is good iff its 3p window lies
// inside the host and CT-matches the reference.
inline bool block_good(const std::vector<unsigned char>& occ, std::size_t len,
                       std::size_t s, std::size_t p) {
  return s >= p && s + 2 * p <= len && occ[s - p];
}

struct BlockExtension {
  std::size_t begin = 0, end = 0;
  bool hit_left = false, hit_right = false;  // stopped by the bad-block budget
};

// Grows the block-aligned region [begin, end) one block at a time on either
// side, stopping after `limit` bad blocks (the last bad block is included)
// or when the next block's 3p window would leave the host.
inline BlockExtension extend_blockwise(const std::vector<unsigned char>& occ,
                                       std::size_t len, std::size_t begin,
                                       std::size_t end, std::size_t p,
                                       std::size_t limit_left,
                                       std::size_t limit_right) {
  assert(p >= 1 && begin <= end && end <= len && (end - begin) % p == 0);
  std::size_t bad_l = 0, bad_r = 0;
  while (bad_l < limit_left && begin >= 2 * p) {
    begin -= p;
    if (!occ[begin - p]) ++bad_l;
  }
  while (bad_r < limit_right && end + 2 * p <= len) {
    if (!occ[end - p]) ++bad_r;
    end += p;
  }
  return {begin, end, bad_l == limit_left, bad_r == limit_right};
}

inline std::vector<std::size_t> bad_blocks_in(const std::vector<unsigned char>& occ,
                                              std::size_t len, std::size_t begin,
                                              std::size_t end, std::size_t p) {
  std::vector<std::size_t> bad;
  for (std::size_t s = begin; s + p <= end; s += p)
    if (!block_good(occ, len, s, p)) bad.push_back(s);
  return bad;
}

// Maximal chains of occurrences with consecutive difference exactly p.
inline std::vector<std::pair<std::size_t, std::size_t>> chain_occurrences(
    std::span<const std::size_t> occs, std::size_t p) {
  std::vector<std::pair<std::size_t, std::size_t>> chains;  // (first, count)
  for (std::size_t o : occs) {
    if (!chains.empty() &&
        o == chains.back().first + chains.back().second * p)
      ++chains.back().second;
    else
      chains.emplace_back(o, 1);
  }
  return chains;
}

}  // namespace detail

// ---- pattern analysis ---------------------------------------------------

namespace detail {

inline PatternAnalysis analyze_pattern_ranks(std::span<const Rank> pattern,
                                             std::size_t delta) {
  const std::size_t m = pattern.size();
  require_contract(delta >= 1, "analyze_pattern: delta must be >= 1");
  require_contract(4 * delta * delta < m, "analyze_pattern: need 4*delta^2 < m");

  PatternAnalysis an;
  an.delta = delta;
  an.member_len = (m + 2 * delta - 1) / (2 * delta);
  const std::size_t m1 = an.member_len;

  // mark[j]: index of the member whose CT-occurrence starts at j, or -1.
  std::vector<int> mark(m - m1 + 1, -1);
  auto insert_member = [&](std::size_t s) {
    const int sym = static_cast<int>(an.member_starts.size());
    an.member_starts.push_back(s);
    for (std::size_t o : find_ct_occurrences(pattern.subspan(s, m1), pattern)) {
      // Occurrence sets of distinct members are disjoint: each new member
      // starts at an unmarked position, so it CT-matches no earlier member.
      assert(mark[o] == -1);
      mark[o] = sym;
    }
  };
  insert_member(0);

  while (an.member_starts.size() < delta) {
    const std::size_t i = an.member_starts.back();
    const std::size_t probe = i + m1;
    assert(probe + delta - 1 + m1 <= m);  // follows from 4*delta^2 < m
    std::size_t next = m;                 // m = none found
    for (std::size_t j = probe; j < probe + delta; ++j)
      if (mark[j] == -1) {
        next = j;
        break;
      }
    if (next != m) {
      insert_member(next);
      continue;
    }
    // All delta probe positions are marked with fewer than delta symbols:
    // two of them carry the same member, which exposes a short border
    // period q < delta of the enclosing fragment.
    std::size_t i1 = m, i2 = m;
    for (std::size_t a = probe; a < probe + delta && i1 == m; ++a)
      for (std::size_t b = a + 1; b < probe + delta; ++b)
        if (mark[a] == mark[b]) {
          i1 = a;
          i2 = b;
          break;
        }
    assert(i1 < i2 && i2 < m);
    const std::size_t q = i2 - i1;
    const std::size_t glen = (i2 + m1) - i1;
    assert(3 * q < glen);
    auto local = border_to_block_trim(pattern.subspan(i1, glen),
                                      static_cast<Rank>(q));
    an.periodic = true;
    an.fragment.begin = i1 + local.begin;
    an.fragment.end = i1 + local.end;
    an.fragment.min_side = local.min_side;
    auto p = minimal_ct_block_period(
        pattern.subspan(an.fragment.begin, an.fragment.length()));
    assert(p.has_value() && *p <= static_cast<Rank>(q));
    an.fragment.period = *p;
    an.period = static_cast<std::size_t>(*p);
    assert(4 * delta * an.fragment.length() >= m);
    return an;
  }
  return an;
}

}  // namespace detail

template <class T>
PatternAnalysis analyze_pattern(std::span<const T> pattern, std::size_t delta) {
  const auto ranks = rank_compress(pattern);
  return detail::analyze_pattern_ranks(std::span<const Rank>(ranks), delta);
}

template <class T>
PatternAnalysis analyze_pattern(const std::vector<T>& pattern, std::size_t delta) {
  return analyze_pattern(std::span<const T>(pattern), delta);
}

// ---- naive profile --------------------------------------------------------

namespace detail {

inline std::vector<int> naive_profile_ranks(std::span<const Rank> text,
                                            const ChdPattern& pattern, int k,
                                            ChdWorkspace& ws) {
  const std::size_t m = pattern.size();
  assert(text.size() >= m);
  std::vector<int> profile(text.size() - m + 1, 0);
  for (std::size_t i = 0; i < profile.size(); ++i)
    profile[i] = chd_run(pattern, text.subspan(i, m), k, ws);
  return profile;
}

}  // namespace detail

template <class T>
std::vector<int> naive_profile(std::span<const T> text, std::span<const T> pattern,
                               int k) {
  require_input(k >= 0, "naive_profile: k must be non-negative");
  require_input(!pattern.empty(), "naive_profile: pattern must be non-empty");
  require_input(text.size() >= pattern.size(),
                "naive_profile: text shorter than pattern");
  const auto tr = rank_compress(text, chd_rank_gap(k));
  ChdPattern prepared(rank_compress(pattern));
  ChdWorkspace ws;
  return detail::naive_profile_ranks(std::span<const Rank>(tr), prepared, k, ws);
}

template <class T>
std::vector<int> naive_profile(const std::vector<T>& text,
                               const std::vector<T>& pattern, int k) {
  return naive_profile(std::span<const T>(text), std::span<const T>(pattern), k);
}

// ---- aperiodic (rainbow) path ----------------------------------------------

namespace detail {

inline std::vector<int> solve_aperiodic_ranks(std::span<const Rank> text,
                                              std::span<const Rank> pattern,
                                              int k, const PatternAnalysis& an,
                                              const ChdPattern& prepared,
                                              ChdWorkspace& ws) {
  const std::size_t n = text.size(), m = pattern.size();
  require_contract(!an.periodic && an.member_starts.size() == an.delta,
                   "solve_aperiodic: analysis does not hold a full rainbow");
  require_contract(k >= 0 && 2 * static_cast<std::size_t>(k) <= an.delta,
                   "solve_aperiodic: need 2k <= delta");
  require_contract(4 * an.delta * an.delta < m, "solve_aperiodic: need 4*delta^2 < m");
  require_contract(n >= m && 2 * n <= 3 * m + 1, "solve_aperiodic: need n <= 3m/2");

  std::vector<std::span<const Rank>> members;
  members.reserve(an.delta);
  for (std::size_t s : an.member_starts)
    members.push_back(pattern.subspan(s, an.member_len));
  const auto occ_lists = find_multi_ct_occurrences(members, text);

  // A window within distance k keeps at least delta - k members intact and
  // in place, so every true occurrence collects that many votes.
  std::vector<int> votes(n - m + 1, 0);
  for (std::size_t s = 0; s < members.size(); ++s) {
    const auto a = static_cast<std::ptrdiff_t>(an.member_starts[s]);
    for (std::size_t o : occ_lists[s]) {
      const std::ptrdiff_t c = static_cast<std::ptrdiff_t>(o) - a;
      if (c >= 0 && c <= static_cast<std::ptrdiff_t>(n - m)) ++votes[c];
    }
  }
  const int need = static_cast<int>(an.delta) - k;
  std::vector<int> profile(n - m + 1, k + 1);
  for (std::size_t c = 0; c < profile.size(); ++c)
    if (votes[c] >= need)
      profile[c] = chd_run(prepared, text.subspan(c, m), k, ws);
  return profile;
}

}  // namespace detail

template <class T>
std::vector<int> solve_aperiodic(std::span<const T> text, std::span<const T> pattern,
                                 int k, const PatternAnalysis& analysis) {
  const auto tr = rank_compress(text, chd_rank_gap(k));
  const auto pr = rank_compress(pattern);
  ChdPattern prepared(pr);
  ChdWorkspace ws;
  return detail::solve_aperiodic_ranks(std::span<const Rank>(tr),
                                       std::span<const Rank>(pr), k, analysis,
                                       prepared, ws);
}

template <class T>
std::vector<int> solve_aperiodic(const std::vector<T>& text,
                                 const std::vector<T>& pattern, int k,
                                 const PatternAnalysis& analysis) {
  return solve_aperiodic(std::span<const T>(text), std::span<const T>(pattern), k,
                         analysis);
}

// ---- block classification ----------------------------------------------

// Fills region.bad with the bad block starts of region [begin, end) in s.
inline void classify_blocks(std::span<const Rank> s, BlockDecomposition& region,
                            std::span<const Rank> reference) {
  require_input(region.p >= 1 && reference.size() == 3 * region.p,
                "classify_blocks: reference must have length 3p");
  require_input(region.begin <= region.end && region.end <= s.size() &&
                    (region.end - region.begin) % region.p == 0,
                "classify_blocks: region must be block-aligned inside s");
  const auto occ = detail::occurrence_bitmap(reference, s);
  region.bad = detail::bad_blocks_in(occ, s.size(), region.begin, region.end,
                                     region.p);
  region.implicitly_bad.clear();
}

// Marks good blocks of `blocks` that are reachable by a psv/nsv arrow from
// outside the region or from a bad block.  Arrows out of good blocks span at
// most p positions, so these sources are the only ones that can reach deep
// into a run of good blocks.
inline void mark_implicitly_bad(BlockDecomposition& blocks,
                                std::span<const Pos> psv,
                                std::span<const Pos> nsv) {
  const std::size_t m = psv.size();
  require_input(nsv.size() == m, "mark_implicitly_bad: psv/nsv length mismatch");
  require_input(blocks.p >= 1 && blocks.begin <= blocks.end && blocks.end <= m &&
                    (blocks.end - blocks.begin) % blocks.p == 0,
                "mark_implicitly_bad: region must be block-aligned");
  const std::size_t p = blocks.p;
  const std::size_t nb = (blocks.end - blocks.begin) / p;
  std::vector<unsigned char> poisoned(nb, 0), explicit_bad(nb, 0);
  for (std::size_t s : blocks.bad) {
    assert(s >= blocks.begin && s < blocks.end && (s - blocks.begin) % p == 0);
    explicit_bad[(s - blocks.begin) / p] = 1;
  }
  auto visit = [&](std::size_t j) {
    const Pos targets[2] = {psv[j], nsv[j]};
    for (Pos t : targets) {
      if (t < 0 || t >= static_cast<Pos>(m)) continue;
      const auto u = static_cast<std::size_t>(t);
      if (u >= blocks.begin && u < blocks.end)
        poisoned[(u - blocks.begin) / p] = 1;
    }
  };
  for (std::size_t j = 0; j < blocks.begin; ++j) visit(j);
  for (std::size_t j = blocks.end; j < m; ++j) visit(j);
  for (std::size_t s : blocks.bad)
    for (std::size_t j = s; j < s + p; ++j) visit(j);
  blocks.implicitly_bad.clear();
  for (std::size_t b = 0; b < nb; ++b)
    if (poisoned[b] && !explicit_bad[b])
      blocks.implicitly_bad.push_back(blocks.begin + b * p);
}

// ---- text restriction (periodic pattern, Case II) -------------------------

namespace detail {

inline TextRestriction restrict_text_impl(const std::vector<unsigned char>& occ,
                                          std::size_t n, std::size_t m, int k,
                                          std::size_t p, std::size_t x_len,
                                          std::size_t y_len) {
  using u128 = unsigned __int128;
  TextRestriction tr;
  tr.blocks.p = p;

  // Only one block residue can host occurrences: an occurrence contributes
  // nearly m/p good blocks at its own residue, a strict majority.
  std::vector<std::size_t> cnt(p, 0);
  for (std::size_t o = 0; o + 3 * p <= n; ++o)
    if (occ[o]) ++cnt[o % p];
  std::size_t rho = 0;
  for (std::size_t r = 1; r < p; ++r)
    if (cnt[r] > cnt[rho]) rho = r;
  const std::size_t c = cnt[rho];

  // Too few good blocks anywhere: no window can reach distance <= k.
  if (m > c * p &&
      static_cast<u128>(m - c * p) * static_cast<u128>(m - c * p) > m) {
    tr.no_occurrences = true;
    return tr;
  }

  // Every window of length m >= 2n/3 covers the middle of the text, so an
  // extension around the middle block of the dominant residue spans all of
  // them (up to a bad-block budget).
  const std::size_t mid = (n - 1) / 2;
  const std::size_t y0 = mid + (rho + p - mid % p) % p;
  require_contract(y0 + p <= n, "restrict_text: text too short for a middle block");
  const std::size_t limit = 9 * static_cast<std::size_t>(k) + 1;
  const auto ext = extend_blockwise(occ, n, y0, y0 + p, p, limit, limit);
  tr.blocks.begin = ext.begin;
  tr.blocks.end = ext.end;
  tr.blocks.bad = bad_blocks_in(occ, n, ext.begin, ext.end, p);

  // Window starts must place the pattern's periodic region inside the
  // extension: smallest candidate >= 0 and largest with window end <= n.
  // A walk that stopped at the array boundary instead of on its budget has
  // not excluded the candidates beyond it, so coverage widens by one block
  // on that side (the candidates that fit are all within one block).
  const auto base = static_cast<std::ptrdiff_t>(ext.begin) -
                    static_cast<std::ptrdiff_t>(x_len) -
                    static_cast<std::ptrdiff_t>(ext.hit_left ? 0 : p);
  for (std::size_t i = 0; i < 3; ++i)
    if (base + static_cast<std::ptrdiff_t>(i * p) >= 0) {
      tr.t1 = static_cast<std::size_t>(base + static_cast<std::ptrdiff_t>(i * p));
      break;
    }
  if (ext.hit_right) {
    for (std::size_t i = 0;; ++i) {
      assert(i < 3);
      if (ext.end + y_len - i * p <= n) {
        tr.t2 = ext.end + y_len - i * p;
        break;
      }
    }
  } else {
    tr.t2 = n;
  }
  assert(tr.t1 + x_len + (ext.hit_left ? 0 : p) >= ext.begin);
  assert((tr.t1 + x_len + p - ext.begin) % p == 0);
  assert(tr.t2 <= n);
  return tr;
}

}  // namespace detail

template <class T>
TextRestriction restrict_text(std::span<const T> text, std::span<const T> pattern,
                              int k, std::size_t p,
                              const BlockDecomposition& pattern_blocks) {
  require_input(k >= 0 && p >= 1, "restrict_text: bad k or p");
  require_input(pattern_blocks.ref_begin + 3 * p <= pattern.size(),
                "restrict_text: reference window out of range");
  require_input(pattern_blocks.end <= pattern.size(),
                "restrict_text: pattern region out of range");
  require_input(text.size() >= pattern.size(), "restrict_text: text too short");
  const auto tr = rank_compress(text);
  const auto pr = rank_compress(pattern);
  const auto ref = std::span<const Rank>(pr).subspan(pattern_blocks.ref_begin, 3 * p);
  const auto occ = detail::occurrence_bitmap(ref, std::span<const Rank>(tr));
  auto out = detail::restrict_text_impl(occ, text.size(), pattern.size(), k, p,
                                        pattern_blocks.begin,
                                        pattern.size() - pattern_blocks.end);
  out.blocks.ref_begin = pattern_blocks.ref_begin;
  return out;
}

template <class T>
TextRestriction restrict_text(const std::vector<T>& text,
                              const std::vector<T>& pattern, int k, std::size_t p,
                              const BlockDecomposition& pattern_blocks) {
  return restrict_text(std::span<const T>(text), std::span<const T>(pattern), k, p,
                       pattern_blocks);
}

// ---- trimming aligned periodic pairs ---------------------------------------

// Removes (r - 2k - 2) * p positions from the middle of the aligned periodic
// regions x[x1, x1 + r*p) and y[x1, x1 + r*p), preserving CHd_k(x ~> y)
// exactly.  `side` selects which end of a period block carries its minimum:
// LeftEnd keeps [0, x1 + k*p + 1) and [x1 + (r-k-2)*p + 1, |x|) — block
// starts are suffix minima of the region and arrows from the right of the
// region may not point into it except its last block; RightEnd is the
// mirror image (block ends are prefix minima, arrows from the left are
// constrained), keeping [0, x1 + (k+2)*p - 1) and [x1 + (r-k)*p - 1, |x|).
// All four structural preconditions are checked; violations throw.
template <class T>
std::pair<std::vector<T>, std::vector<T>> trim_aligned_periodic_pair(
    std::span<const T> x, std::span<const T> y, std::size_t p, int k,
    std::size_t x1, std::size_t r, MinSide side) {
  const std::size_t n = x.size();
  require_input(y.size() == n, "trim_aligned_periodic_pair: length mismatch");
  require_input(p >= 1 && k >= 0, "trim_aligned_periodic_pair: bad p or k");
  require_contract(r >= 2 * static_cast<std::size_t>(k) + 3,
                   "trim_aligned_periodic_pair: need r >= 2k + 3");
  require_contract(x1 + r * p <= n,
                   "trim_aligned_periodic_pair: region out of range");

  const auto xr = rank_compress(x);
  const auto yr = rank_compress(y);
  const auto xs = std::span<const Rank>(xr);
  const auto ys = std::span<const Rank>(yr);
  require_contract(ct_equal(xs.subspan(x1, r * p), ys.subspan(x1, r * p)),
                   "trim_aligned_periodic_pair: regions do not CT-match");

  const auto check_suffix_minima = [&](std::span<const Rank> v) {
    Rank run = v[x1 + r * p - 1];
    for (std::size_t pos = x1 + r * p; pos-- > x1;) {
      run = std::min(run, v[pos]);
      if ((pos - x1) % p == 0)
        require_contract(v[pos] == run,
                         "trim_aligned_periodic_pair: block starts are not "
                         "suffix minima of the region");
    }
  };
  const auto check_prefix_minima = [&](std::span<const Rank> v) {
    Rank run = v[x1];
    for (std::size_t pos = x1; pos < x1 + r * p; ++pos) {
      run = std::min(run, v[pos]);
      if ((pos - x1) % p == p - 1)
        require_contract(v[pos] == run,
                         "trim_aligned_periodic_pair: block ends are not "
                         "prefix minima of the region");
    }
  };

  std::size_t keep1_end, keep2_begin;
  const auto kk = static_cast<std::size_t>(k);
  if (side == MinSide::LeftEnd) {
    const auto pv = psv_indices(ys);
    for (std::size_t i = x1 + r * p; i < n; ++i)
      require_contract(!(pv[i] >= static_cast<Pos>(x1) &&
                         pv[i] < static_cast<Pos>(x1 + (r - 1) * p)),
                       "trim_aligned_periodic_pair: psv arrow points into the "
                       "region");
    check_suffix_minima(xs);
    check_suffix_minima(ys);
    keep1_end = x1 + kk * p + 1;
    keep2_begin = x1 + (r - kk - 2) * p + 1;
  } else {
    const auto nv = nsv_indices(ys);
    for (std::size_t i = 0; i < x1; ++i)
      require_contract(!(nv[i] >= static_cast<Pos>(x1 + p) &&
                         nv[i] < static_cast<Pos>(x1 + r * p)),
                       "trim_aligned_periodic_pair: nsv arrow points into the "
                       "region");
    check_prefix_minima(xs);
    check_prefix_minima(ys);
    keep1_end = x1 + (kk + 2) * p - 1;
    keep2_begin = x1 + (r - kk) * p - 1;
  }
  assert(keep1_end <= keep2_begin && keep2_begin <= n);
  assert(keep2_begin - keep1_end == (r - 2 * kk - 2) * p);

  std::pair<std::vector<T>, std::vector<T>> out;
  out.first.reserve(n - (keep2_begin - keep1_end));
  out.second.reserve(n - (keep2_begin - keep1_end));
  for (std::size_t i = 0; i < keep1_end; ++i) {
    out.first.push_back(x[i]);
    out.second.push_back(y[i]);
  }
  for (std::size_t i = keep2_begin; i < n; ++i) {
    out.first.push_back(x[i]);
    out.second.push_back(y[i]);
  }
  return out;
}

template <class T>
std::pair<std::vector<T>, std::vector<T>> trim_aligned_periodic_pair(
    const std::vector<T>& x, const std::vector<T>& y, std::size_t p, int k,
    std::size_t x1, std::size_t r, MinSide side) {
  return trim_aligned_periodic_pair(std::span<const T>(x), std::span<const T>(y),
                                    p, k, x1, r, side);
}

// ---- periodic path ----------------------------------------------------------

namespace detail {

// Case I: the periodic structure breaks within the pattern on side `left`.
// Any occurrence aligns one of the <= 3k+1 broken pattern blocks with a
// broken text block near an exact occurrence chain of a 100k-block probe, so
// all (text bad, pattern bad) alignments form a complete candidate set.
inline void periodic_case_broken(std::span<const Rank> text,
                                 std::span<const Rank> pattern, int k,
                                 std::size_t p, const PeriodicFragment& frag,
                                 const BlockExtension& ext, bool left,
                                 const std::vector<unsigned char>& occ_p,
                                 const std::vector<unsigned char>& occ_t,
                                 const Parameters& params,
                                 const ChdPattern& prepared, ChdWorkspace& ws,
                                 std::vector<int>& profile) {
  const std::size_t n = text.size(), m = pattern.size();
  const std::size_t flen = 100 * static_cast<std::size_t>(k) * p;
  assert(frag.length() >= flen);
  const auto probe =
      pattern.subspan(left ? frag.begin : frag.end - flen, flen);
  const auto occs = find_ct_occurrences(probe, text);
  if (params.verify_runs)
    decompose_into_runs(probe, text, static_cast<Rank>(p), occs, true);

  const auto pat_bad = bad_blocks_in(occ_p, m, ext.begin, ext.end, p);
  assert(!pat_bad.empty());
  const std::size_t limit = 9 * static_cast<std::size_t>(k) + 1;

  std::vector<std::size_t> cand;
  for (const auto& [first, count] : chain_occurrences(occs, p)) {
    const std::size_t span_end = first + (count - 1) * p + flen;
    const auto rext =
        extend_blockwise(occ_t, n, first, span_end, p, limit, limit);
    auto text_bad = bad_blocks_in(occ_t, n, rext.begin, rext.end, p);
    // Blocks flush against the text ends never carry a full 3p window; treat
    // the next one out as bad too when the walk stopped at a boundary.
    if (!rext.hit_left && rext.begin >= p) text_bad.push_back(rext.begin - p);
    if (!rext.hit_right && rext.end + p <= n) text_bad.push_back(rext.end);
    for (std::size_t st : text_bad)
      for (std::size_t sp : pat_bad) {
        const auto c = static_cast<std::ptrdiff_t>(st) -
                       static_cast<std::ptrdiff_t>(sp);
        if (c >= 0 && c <= static_cast<std::ptrdiff_t>(n - m))
          cand.push_back(static_cast<std::size_t>(c));
      }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (std::size_t c : cand)
    profile[c] = chd_run(prepared, text.subspan(c, m), k, ws);
}

// Case II: the pattern is periodic except for < 2p-long flanks and a few bad
// blocks.  Occurrences confine to one residue inside a text restriction;
// for each surviving alignment, long all-good stretches are trimmed down to
// 3k-block margins before the DP runs on the remainder.
inline void periodic_case_smooth(std::span<const Rank> text,
                                 std::span<const Rank> pattern, int k,
                                 std::size_t p, const PeriodicFragment& frag,
                                 const BlockExtension& ext,
                                 const std::vector<unsigned char>& occ_p,
                                 const std::vector<unsigned char>& occ_t,
                                 const ChdPattern& prepared, ChdWorkspace& ws,
                                 std::vector<int>& profile) {
  const std::size_t n = text.size(), m = pattern.size();
  const auto kk = static_cast<std::size_t>(k);
  const std::size_t x_len = ext.begin;
  const std::size_t y_len = m - ext.end;
  assert(x_len < 2 * p && y_len < 2 * p);

  BlockDecomposition pb;
  pb.begin = ext.begin;
  pb.end = ext.end;
  pb.p = p;
  pb.ref_begin = frag.begin;
  pb.bad = bad_blocks_in(occ_p, m, ext.begin, ext.end, p);
  assert(pb.bad.size() <= 6 * kk + 2);
  {
    const auto pv = psv_indices(pattern);
    const auto nv = nsv_indices(pattern);
    mark_implicitly_bad(pb, pv, nv);
  }
  std::vector<std::size_t> pat_bad(pb.bad.size() + pb.implicitly_bad.size());
  std::merge(pb.bad.begin(), pb.bad.end(), pb.implicitly_bad.begin(),
             pb.implicitly_bad.end(), pat_bad.begin());

  const auto tr = restrict_text_impl(occ_t, n, m, k, p, x_len, y_len);
  if (tr.no_occurrences) return;
  // Bad or unverifiable text blocks across everything a surviving window can
  // touch; blocks flush against the text ends never carry a full 3p window
  // and count as bad outright.
  std::vector<std::size_t> text_bad;
  if (tr.t1 + m <= tr.t2)
    for (std::size_t s = tr.t1 + x_len; s + p + y_len <= tr.t2; s += p)
      if (s < p || s + 2 * p > n || !occ_t[s - p]) text_bad.push_back(s);

  // A text bad block within 6kp of a pattern bad block spoils the gap
  // structure; fall back to the full DP there.
  const std::size_t near = 6 * kk * p + p - 1;
  const auto overlaps = [&](std::size_t rel) {
    auto it = std::lower_bound(pat_bad.begin(), pat_bad.end(), rel);
    if (it != pat_bad.end() && *it - rel <= near) return true;
    if (it != pat_bad.begin() && rel - *std::prev(it) <= near) return true;
    return false;
  };

  std::vector<std::size_t> merged;
  std::vector<std::pair<std::size_t, std::size_t>> removals;
  std::vector<Rank> gq, pq;
  for (std::size_t i = tr.t1; i + m <= tr.t2; i += p) {
    const auto lo = std::lower_bound(text_bad.begin(), text_bad.end(), i + x_len);
    const auto hi =
        std::lower_bound(text_bad.begin(), text_bad.end(), i + m - y_len);
    bool full = false;
    for (auto it = lo; it != hi && !full; ++it) {
      assert((*it - i - x_len) % p == 0);
      full = overlaps(*it - i);
    }
    if (full) {
      profile[i] = chd_run(prepared, text.subspan(i, m), k, ws);
      continue;
    }

    // Merge bad block indices of both sides over the region [x_len, m-y_len).
    const std::size_t nb = (m - y_len - x_len) / p;
    merged.clear();
    for (std::size_t s : pat_bad) merged.push_back((s - x_len) / p);
    for (auto it = lo; it != hi; ++it) merged.push_back((*it - i - x_len) / p);
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    // Per maximal all-good gap of L >= 6k+1 blocks, drop (L-6k)p positions,
    // phase-shifted so the cut is a single valid trim of the periodic pair.
    removals.clear();
    std::size_t prev = 0;
    auto flush_gap = [&](std::size_t lo_b, std::size_t hi_b) {
      const std::size_t len = hi_b - lo_b;
      if (len < 6 * kk + 1) return;
      const std::size_t g0 = x_len + lo_b * p;
      if (frag.min_side == MinSide::LeftEnd)
        removals.emplace_back(g0 + 3 * kk * p + 1, g0 + (len - 3 * kk) * p + 1);
      else
        removals.emplace_back(g0 + 3 * kk * p - 1, g0 + (len - 3 * kk) * p - 1);
    };
    for (std::size_t b : merged) {
      flush_gap(prev, b);
      prev = b + 1;
    }
    flush_gap(prev, nb);

    if (removals.empty()) {
      profile[i] = chd_run(prepared, text.subspan(i, m), k, ws);
      continue;
    }
    gq.clear();
    pq.clear();
    std::size_t pos = 0;
    for (const auto& [rb, re] : removals) {
      for (std::size_t j = pos; j < rb; ++j) {
        gq.push_back(text[i + j]);
        pq.push_back(pattern[j]);
      }
      pos = re;
    }
    for (std::size_t j = pos; j < m; ++j) {
      gq.push_back(text[i + j]);
      pq.push_back(pattern[j]);
    }
    ChdPattern local(pq);
    profile[i] = chd_run(local, std::span<const Rank>(gq), k, ws);
  }
}

inline std::vector<int> solve_periodic_ranks(std::span<const Rank> text,
                                             std::span<const Rank> pattern,
                                             int k, std::size_t p,
                                             std::size_t delta,
                                             const PeriodicFragment& frag,
                                             const Parameters& params,
                                             const ChdPattern& prepared,
                                             ChdWorkspace& ws) {
  using u128 = unsigned __int128;
  const std::size_t n = text.size(), m = pattern.size();
  require_contract(k >= 1, "solve_periodic: need k >= 1");
  require_contract(static_cast<std::size_t>(k) < delta, "solve_periodic: need k < delta");
  require_contract(p >= 1 && p <= delta, "solve_periodic: need p <= delta");
  require_contract(n >= m && 2 * n <= 3 * m + 1, "solve_periodic: need n <= 3m/2");
  const u128 ckd = static_cast<u128>(params.constant) * k * delta;
  require_contract(params.constant >= 1 && ckd * ckd <= m,
                   "solve_periodic: need (C*k*delta)^2 <= m");
  require_contract(frag.end <= m && frag.begin < frag.end,
                   "solve_periodic: fragment out of range");
  require_contract(frag.period == static_cast<Rank>(p) && frag.length() % p == 0,
                   "solve_periodic: fragment period mismatch");
  require_contract(4 * delta * frag.length() >= m,
                   "solve_periodic: fragment shorter than m/(4*delta)");
  require_contract(minimal_ct_block_period(pattern.subspan(
                       frag.begin, frag.length())) == std::optional<Rank>(
                       static_cast<Rank>(p)),
                   "solve_periodic: p is not the fragment's minimal block period");

  std::vector<int> profile(n - m + 1, k + 1);
  // Under the default constant the fragment always spans >= 100k periods; a
  // small override can void that, in which case the structured argument has
  // nothing to grab onto and the plain DP answers the chunk.
  if (frag.length() < 100 * static_cast<std::size_t>(k) * p) {
    for (std::size_t i = 0; i < profile.size(); ++i)
      profile[i] = chd_run(prepared, text.subspan(i, m), k, ws);
    return profile;
  }
  const auto reference = pattern.subspan(frag.begin, 3 * p);
  const auto occ_p = occurrence_bitmap(reference, pattern);
  const auto occ_t = occurrence_bitmap(reference, text);
  const std::size_t budget = 3 * static_cast<std::size_t>(k) + 1;
  const auto ext =
      extend_blockwise(occ_p, m, frag.begin, frag.end, p, budget, budget);

  if (ext.hit_left || ext.hit_right)
    periodic_case_broken(text, pattern, k, p, frag, ext, ext.hit_left, occ_p,
                         occ_t, params, prepared, ws, profile);
  else
    periodic_case_smooth(text, pattern, k, p, frag, ext, occ_p, occ_t,
                         prepared, ws, profile);
  return profile;
}

}  // namespace detail

template <class T>
std::vector<int> solve_periodic(std::span<const T> text, std::span<const T> pattern,
                                int k, std::size_t p, std::size_t delta,
                                const PeriodicFragment& fragment,
                                const Parameters& params = {}) {
  const auto tr = rank_compress(text, chd_rank_gap(k));
  const auto pr = rank_compress(pattern);
  ChdPattern prepared(pr);
  ChdWorkspace ws;
  return detail::solve_periodic_ranks(std::span<const Rank>(tr),
                                      std::span<const Rank>(pr), k, p, delta,
                                      fragment, params, prepared, ws);
}

template <class T>
std::vector<int> solve_periodic(const std::vector<T>& text,
                                const std::vector<T>& pattern, int k,
                                std::size_t p, std::size_t delta,
                                const PeriodicFragment& fragment,
                                const Parameters& params = {}) {
  return solve_periodic(std::span<const T>(text), std::span<const T>(pattern), k,
                        p, delta, fragment, params);
}

// ---- dispatch ----------------------------------------------------------------

namespace detail {

// Largest delta satisfying all structured-path constraints, or 0 for none.
inline std::size_t choose_delta(std::size_t m, int k, int c) {
  if (k == 0) return 1;
  using u128 = unsigned __int128;
  const auto uk = static_cast<u128>(k);
  const auto uc = static_cast<u128>(c);
  std::size_t candidates[2] = {0, 2 * static_cast<std::size_t>(k)};
  if (uc * uc * uk * uk * uk * uk * uk <= m) {
    std::uint64_t mk;
    if (__builtin_mul_overflow(static_cast<std::uint64_t>(m),
                               static_cast<std::uint64_t>(k), &mk))
      mk = UINT64_MAX;
    candidates[0] = static_cast<std::size_t>(
        isqrt_u64(mk) / (static_cast<std::uint64_t>(c) * k * k));
  }
  for (std::size_t delta : candidates) {
    if (delta == 0) continue;
    if (2 * static_cast<std::size_t>(k) > delta) continue;
    if (4 * delta * delta >= m) continue;
    const u128 ckd = uc * uk * delta;
    if (ckd * ckd > m) continue;
    return delta;
  }
  return 0;
}

struct Chunk {
  std::size_t begin = 0, end = 0;        // text range
  std::size_t own_lo = 0, own_hi = 0;    // owned window starts, inclusive
};

// Overlapping text chunks of length <= 3m/2 whose owned window ranges
// partition [0, n - m]; each chunk fully contains its owned windows.
inline std::vector<Chunk> make_chunks(std::size_t n, std::size_t m) {
  std::vector<Chunk> chunks;
  for (std::size_t i = 0; i * m / 2 + m <= n; ++i) {
    Chunk c;
    c.begin = i * m / 2;
    c.end = std::min((i + 3) * m / 2, n);
    c.own_lo = (i * m + 1) / 2;
    c.own_hi = std::min(((i + 1) * m + 1) / 2 - 1, n - m);
    assert(c.end - c.begin >= m);
    assert(c.own_lo >= c.begin && c.own_hi + m <= c.end);
    if (c.own_lo > c.own_hi) continue;
    chunks.push_back(c);
  }
  return chunks;
}

inline std::vector<int> solve_chunked(std::span<const Rank> text,
                                      std::span<const Rank> pattern, int k,
                                      const Parameters& params,
                                      const PatternAnalysis& analysis,
                                      SearchPath path);

inline std::vector<int> solve_ranks(std::span<const Rank> text,
                                    std::span<const Rank> pattern, int k,
                                    const Parameters& params) {
  const std::size_t n = text.size(), m = pattern.size();
  using u128 = unsigned __int128;
  std::vector<int> profile(n - m + 1, -1);

  SearchPath path = params.forced_path;
  if (path == SearchPath::Auto) {
    if (k == 0) {
      // Exact matching answers the k = 0 profile directly.
      std::fill(profile.begin(), profile.end(), 1);
      for (std::size_t o : find_ct_occurrences(pattern, text)) profile[o] = 0;
      return profile;
    }
    const auto ck = static_cast<u128>(params.constant) * k;
    const bool naive = ck * ck >= m || ck * ck * ck * ck >= m;
    if (naive) {
      path = SearchPath::Naive;
    } else {
      const std::size_t delta = params.delta_override
                                    ? params.delta_override
                                    : choose_delta(m, k, params.constant);
      if (delta == 0) {
        path = SearchPath::Naive;
      } else {
        const auto analysis = analyze_pattern_ranks(pattern, delta);
        path = analysis.periodic ? SearchPath::Periodic : SearchPath::Aperiodic;
        return solve_chunked(text, pattern, k, params, analysis, path);
      }
    }
  }

  if (path == SearchPath::Naive) {
    ChdPattern prepared(std::vector<Rank>(pattern.begin(), pattern.end()));
    const std::size_t nthreads =
        std::min<std::size_t>(std::max(params.threads, 1), profile.size());
    if (nthreads <= 1) {
      ChdWorkspace ws;
      for (std::size_t i = 0; i < profile.size(); ++i)
        profile[i] = chd_run(prepared, text.subspan(i, m), k, ws);
      return profile;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        ChdWorkspace ws;
        const std::size_t grain = 256;
        for (;;) {
          const std::size_t lo = next.fetch_add(grain);
          if (lo >= profile.size()) return;
          const std::size_t hi = std::min(lo + grain, profile.size());
          for (std::size_t i = lo; i < hi; ++i)
            profile[i] = chd_run(prepared, text.subspan(i, m), k, ws);
        }
      });
    for (auto& th : pool) th.join();
    return profile;
  }

  // Forced structured path.
  const std::size_t delta = params.delta_override
                                ? params.delta_override
                                : choose_delta(m, k, params.constant);
  require_contract(delta >= 1, "solve: no admissible delta for forced path");
  if (params.delta_override) {
    require_contract(2 * static_cast<std::size_t>(k) <= delta &&
                         4 * delta * delta < m,
                     "solve: forced delta violates 2k <= delta < sqrt(m)/2");
  }
  const auto analysis = analyze_pattern_ranks(pattern, delta);
  if (path == SearchPath::Aperiodic)
    require_contract(!analysis.periodic,
                     "solve: forced aperiodic path but the pattern analysis "
                     "found a periodic fragment");
  else
    require_contract(analysis.periodic,
                     "solve: forced periodic path but the pattern analysis "
                     "found a rainbow");
  return solve_chunked(text, pattern, k, params, analysis, path);
}

inline std::vector<int> solve_chunked(std::span<const Rank> text,
                                      std::span<const Rank> pattern, int k,
                                      const Parameters& params,
                                      const PatternAnalysis& analysis,
                                      SearchPath path) {
  const std::size_t n = text.size(), m = pattern.size();
  std::vector<int> profile(n - m + 1, -1);
  const auto chunks = make_chunks(n, m);
  const ChdPattern prepared(std::vector<Rank>(pattern.begin(), pattern.end()));

  const auto run_chunk = [&](const Chunk& c, ChdWorkspace& ws) {
    const auto chunk_text = text.subspan(c.begin, c.end - c.begin);
    std::vector<int> sub;
    if (path == SearchPath::Aperiodic)
      sub = solve_aperiodic_ranks(chunk_text, pattern, k, analysis, prepared, ws);
    else
      sub = solve_periodic_ranks(chunk_text, pattern, k, analysis.period,
                                 analysis.delta, analysis.fragment, params,
                                 prepared, ws);
    for (std::size_t j = c.own_lo; j <= c.own_hi; ++j)
      profile[j] = sub[j - c.begin];
  };

  const std::size_t nthreads =
      std::min<std::size_t>(std::max(params.threads, 1), chunks.size());
  if (nthreads <= 1) {
    ChdWorkspace ws;
    for (const auto& c : chunks) run_chunk(c, ws);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        ChdWorkspace ws;
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= chunks.size()) return;
          run_chunk(chunks[i], ws);
        }
      });
    for (auto& th : pool) th.join();
  }
#ifndef NDEBUG
  for (int v : profile) assert(v >= 0);  // every window owned exactly once
#endif
  return profile;
}

}  // namespace detail

// Distance profile of every length-m window of the text against the pattern,
// capped at k+1.  Dispatches between the naive per-window DP and the
// structured paths depending on k, m, and the pattern's analysis; forced
// paths and parameter overrides check their preconditions and throw
// contract_error when they cannot hold.
template <class T>
std::vector<int> solve(std::span<const T> text, std::span<const T> pattern, int k,
                       const Parameters& params = {}) {
  require_input(!pattern.empty(), "solve: pattern must be non-empty");
  require_input(text.size() >= pattern.size(), "solve: text shorter than pattern");
  require_input(k >= 0, "solve: k must be non-negative");
  require_input(params.constant >= 1, "solve: constant must be >= 1");
  require_input(params.threads >= 1, "solve: threads must be >= 1");
  require_input(params.delta_override == 0 || params.forced_path != SearchPath::Naive,
                "solve: delta override has no effect on the naive path");
  const auto tr = rank_compress(text, chd_rank_gap(k));
  const auto pr = rank_compress(pattern);
  return detail::solve_ranks(std::span<const Rank>(tr), std::span<const Rank>(pr),
                             k, params);
}

template <class T>
std::vector<int> solve(const std::vector<T>& text, const std::vector<T>& pattern,
                       int k, const Parameters& params = {}) {
  return solve(std::span<const T>(text), std::span<const T>(pattern), k, params);
}

}  // namespace ctmatch
