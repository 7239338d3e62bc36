#pragma once
// Periodicity under Cartesian-tree matching.
//
// p is a border period of s when the prefix and the suffix of length |s|-p
// CT-match.  p is a block period when additionally p divides |s| and the
// leftmost minimum of s sits at one of the two ends; the string is then a
// chain of |s|/p blocks that all match each other.  Block-periodicity has a
// plain string-periodicity characterisation: with the minimum in front it is
// equivalent to PD(s) minus its first entry having string period p, with the
// minimum at the back to ND(s) minus its last entry having string period p.

#include <optional>

#include "core.hpp"

namespace ctmatch {

enum class MinSide { LeftEnd, RightEnd };

// A fragment [begin, end) of some host sequence together with a block period
// of the fragment and the end holding the leftmost minimum.
struct PeriodicFragment {
  std::size_t begin = 0;
  std::size_t end = 0;
  Rank period = 0;
  MinSide min_side = MinSide::LeftEnd;

  std::size_t length() const { return end - begin; }
};

inline std::size_t leftmost_min_index(std::span<const Rank> s) {
  assert(!s.empty());
  return static_cast<std::size_t>(std::min_element(s.begin(), s.end()) - s.begin());
}

inline bool is_ct_border_period(std::span<const Rank> s, Rank p) {
  const std::size_t m = s.size();
  require_input(p >= 1 && p <= static_cast<Rank>(m), "is_ct_border_period: p out of range");
  const std::size_t q = static_cast<std::size_t>(p);
  if (q == m) return true;
  // PD restricts to prefixes unchanged, so compare PD of the whole string
  // against its own fragment-adjusted shift instead of rescanning values.
  const auto pd = pd_array(s);
  for (std::size_t t = 0; t < m - q; ++t) {
    const Rank d = pd[q + t];
    if ((d > static_cast<Rank>(t) ? 0 : d) != pd[t]) return false;
  }
  return true;
}

inline bool is_ct_block_period(std::span<const Rank> s, Rank p) {
  const std::size_t m = s.size();
  require_input(p >= 1 && p <= static_cast<Rank>(m), "is_ct_block_period: p out of range");
  if (m % static_cast<std::size_t>(p) != 0) return false;
  const std::size_t mu = leftmost_min_index(s);
  if (mu != 0 && mu != m - 1) return false;
  return is_ct_border_period(s, p);
}

// Smallest block period, or nothing when the leftmost minimum is interior (no
// p qualifies then).  Candidates only need to run over divisors of |s|.
inline std::optional<Rank> minimal_ct_block_period(std::span<const Rank> s) {
  const std::size_t m = s.size();
  if (m == 0) return std::nullopt;
  if (m == 1) return 1;
  const std::size_t mu = leftmost_min_index(s);
  std::vector<Rank> enc;
  if (mu == 0) {
    enc = pd_array(s);
    enc.erase(enc.begin());
  } else if (mu == m - 1) {
    enc = nd_array(s);
    enc.pop_back();
  } else {
    return std::nullopt;
  }
  for (std::size_t p = 1; p <= m; ++p) {
    if (m % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i + p < enc.size(); ++i)
      if (enc[i] != enc[i + p]) {
        ok = false;
        break;
      }
    if (ok) return static_cast<Rank>(p);
  }
  return static_cast<Rank>(m);  // p = m always qualifies; not reached
}

// Shrinks a border-periodic string to a block-periodic fragment of length
// p*ceil(m/p) - 2p.  The leftmost minimum of a border-periodic string lies
// within p of one of the ends; anchoring the fragment there makes p a block
// period of it.  O(p) beyond locating the minimum.
inline PeriodicFragment border_to_block_trim(std::span<const Rank> s, Rank p,
                                             std::size_t min_pos) {
  const std::size_t m = s.size();
  require_contract(p >= 1 && 3 * static_cast<std::size_t>(p) < m,
                   "border_to_block_trim: need 3p < |s|");
  const std::size_t q = static_cast<std::size_t>(p);
  const std::size_t blocks = (m + q - 1) / q;
  const std::size_t frag = q * (blocks - 2);
  assert(min_pos < m && s[min_pos] == s[leftmost_min_index(s)]);

  PeriodicFragment f;
  f.period = p;
  if (min_pos < q) {
    f.begin = min_pos;
    f.end = min_pos + frag;
    f.min_side = MinSide::LeftEnd;
  } else {
    const std::size_t a = m - 1 - min_pos;
    assert(a < q);  // minimum is near one end or the other
    f.begin = m - a - frag;
    f.end = m - a;
    f.min_side = MinSide::RightEnd;
  }
  assert(f.end <= m && f.begin < f.end);
#ifdef CTMATCH_EXPENSIVE_CHECKS
  assert(is_ct_border_period(s, p));
  assert(is_ct_block_period(s.subspan(f.begin, frag), p));
  assert(leftmost_min_index(s.subspan(f.begin, frag)) ==
         (f.min_side == MinSide::LeftEnd ? 0 : frag - 1));
#endif
  return f;
}

inline PeriodicFragment border_to_block_trim(std::span<const Rank> s, Rank p) {
  require_contract(!s.empty(), "border_to_block_trim: empty input");
  return border_to_block_trim(s, p, leftmost_min_index(s));
}

}  // namespace ctmatch
