#pragma once
// Exact search for Cartesian-tree occurrences, and grouping of occurrence
// sets into maximal arithmetic progressions ("runs").
//
// The matcher is a failure-function automaton over PD values.  A window
// comparison at offset t only needs the fragment-adjusted PD value
// (d > t ? 0 : d), which depends on the host PD entry and the offset alone,
// so the classic KMP invariants carry over: PD equality is prefix-stable,
// ND equality is suffix-stable, and borders chain through the failure
// function exactly as for strings.

#include "period.hpp"

namespace ctmatch {

// CT-equality of two equal-length fragments given their hosts' PD arrays.
inline bool ct_fragment_equal(std::span<const Rank> pd_a, std::size_t ia,
                              std::span<const Rank> pd_b, std::size_t ib,
                              std::size_t len) {
  assert(ia + len <= pd_a.size() && ib + len <= pd_b.size());
  for (std::size_t t = 0; t < len; ++t) {
    const Rank da = pd_a[ia + t];
    const Rank db = pd_b[ib + t];
    if ((da > static_cast<Rank>(t) ? 0 : da) != (db > static_cast<Rank>(t) ? 0 : db))
      return false;
  }
  return true;
}

struct PdAutomaton {
  std::vector<Rank> pd;            // PD of the pattern
  std::vector<std::size_t> fail;   // fail[q]: longest proper CT-border of P[0..q)

  std::size_t size() const { return pd.size(); }
};

inline PdAutomaton build_pd_automaton(std::span<const Rank> pattern) {
  require_input(!pattern.empty(), "build_pd_automaton: empty pattern");
  PdAutomaton a;
  a.pd = pd_array(pattern);
  const std::size_t m = pattern.size();
  a.fail.assign(m + 1, 0);
  std::size_t b = 0;
  for (std::size_t q = 1; q < m; ++q) {
    const Rank d = a.pd[q];
    while (b > 0 && (d > static_cast<Rank>(b) ? 0 : d) != a.pd[b]) b = a.fail[b];
    if ((d > static_cast<Rank>(b) ? 0 : d) == a.pd[b]) ++b;
    a.fail[q + 1] = b;
  }
  return a;
}

// Occurrence starts (relative to text_pd's range, 0-based) given the PD array
// of the searched text.
inline std::vector<std::size_t> scan_pd_occurrences(const PdAutomaton& a,
                                                    std::span<const Rank> text_pd) {
  const std::size_t m = a.size();
  std::vector<std::size_t> occ;
  std::size_t q = 0;
  for (std::size_t i = 0; i < text_pd.size(); ++i) {
    const Rank d = text_pd[i];
    while (q > 0 && (d > static_cast<Rank>(q) ? 0 : d) != a.pd[q]) q = a.fail[q];
    if ((d > static_cast<Rank>(q) ? 0 : d) == a.pd[q]) ++q;
    if (q == m) {
      occ.push_back(i + 1 - m);
      q = a.fail[m];
    }
  }
  return occ;
}

inline std::vector<std::size_t> find_ct_occurrences(std::span<const Rank> pattern,
                                                    std::span<const Rank> text) {
  require_input(!pattern.empty(), "find_ct_occurrences: empty pattern");
  if (pattern.size() > text.size()) return {};
  const auto tpd = pd_array(text);
  return scan_pd_occurrences(build_pd_automaton(pattern), tpd);
}

inline std::vector<std::vector<std::size_t>> find_multi_ct_occurrences(
    const std::vector<std::span<const Rank>>& patterns, std::span<const Rank> text) {
  const auto tpd = pd_array(text);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(patterns.size());
  for (const auto& p : patterns) {
    require_input(!p.empty(), "find_multi_ct_occurrences: empty pattern");
    if (p.size() > text.size())
      out.emplace_back();
    else
      out.push_back(scan_pd_occurrences(build_pd_automaton(p), tpd));
  }
  return out;
}

// A fragment is a run when its minimal block period p fits twice into it and
// the fragment cannot be extended by p positions on either side (within the
// host) while keeping p a block period.
inline bool is_ct_run(std::span<const Rank> s, std::size_t begin, std::size_t end) {
  require_input(begin < end && end <= s.size(), "is_ct_run: bad fragment");
  const std::size_t len = end - begin;
  const auto p_opt = minimal_ct_block_period(s.subspan(begin, len));
  if (!p_opt) return false;
  const std::size_t p = static_cast<std::size_t>(*p_opt);
  if (2 * p > len) return false;
  if (begin >= p && is_ct_block_period(s.subspan(begin - p, len + p), *p_opt)) return false;
  if (end + p <= s.size() && is_ct_block_period(s.subspan(begin, len + p), *p_opt)) return false;
  return true;
}

struct CtRun {
  std::size_t first = 0;  // first occurrence start
  std::size_t count = 0;  // occurrences first, first+p, ..., first+(count-1)*p
};

struct RunDecomposition {
  Rank p = 0;
  std::size_t pattern_len = 0;
  std::vector<CtRun> runs;

  std::size_t span_begin(const CtRun& r) const { return r.first; }
  std::size_t span_end(const CtRun& r) const {
    return r.first + (r.count - 1) * static_cast<std::size_t>(p) + pattern_len;
  }
};

// Groups the complete, sorted occurrence set of a pattern with minimal block
// period p <= m/4 into maximal progressions with difference p.  With verify
// on, every progression's text span is checked to be a run with minimal
// block period p and adjacent spans to overlap in fewer than p positions —
// which fails if the caller passed an incomplete occurrence list or a
// non-minimal p.
inline RunDecomposition decompose_into_runs(std::span<const Rank> pattern,
                                            std::span<const Rank> text, Rank p,
                                            std::span<const std::size_t> occs,
                                            bool verify = true) {
  const std::size_t m = pattern.size();
  require_contract(p >= 1 && 4 * static_cast<std::size_t>(p) <= m,
                   "decompose_into_runs: need p <= m/4");
  require_contract(minimal_ct_block_period(pattern) == std::optional<Rank>(p),
                   "decompose_into_runs: p is not the minimal block period");
  const std::size_t q = static_cast<std::size_t>(p);

  RunDecomposition d;
  d.p = p;
  d.pattern_len = m;
  for (std::size_t idx = 0; idx < occs.size(); ++idx) {
    require_input(occs[idx] + m <= text.size(), "decompose_into_runs: occurrence out of range");
    require_input(idx == 0 || occs[idx] > occs[idx - 1],
                  "decompose_into_runs: occurrences not strictly increasing");
    if (!d.runs.empty() && occs[idx] == d.runs.back().first + d.runs.back().count * q)
      ++d.runs.back().count;
    else
      d.runs.push_back({occs[idx], 1});
  }

  if (verify) {
    for (std::size_t i = 0; i < d.runs.size(); ++i) {
      const std::size_t b = d.span_begin(d.runs[i]);
      const std::size_t e = d.span_end(d.runs[i]);
      require_contract(minimal_ct_block_period(text.subspan(b, e - b)) == std::optional<Rank>(p),
                       "decompose_into_runs: span period mismatch");
      require_contract(is_ct_run(text, b, e), "decompose_into_runs: span is not a run");
      if (i > 0)
        require_contract(d.span_end(d.runs[i - 1]) < b + q,
                         "decompose_into_runs: spans overlap by p or more");
    }
  }
  return d;
}

}  // namespace ctmatch
