#pragma once

#include <cstdint>
#include <vector>

#include "ed1x/common.hpp"
#include "ed1x/suffix_array.hpp"
#include "ed1x/text.hpp"

namespace ed1x {

/// Inclusive 1-based rank range; lo > hi encodes the empty range.
struct RankRange {
  Rank lo = 1, hi = 0;
  bool empty() const { return lo > hi; }
  bool contains(Rank k) const { return lo <= k && k <= hi; }
  Rank width() const { return empty() ? 0 : hi - lo + 1; }
  friend bool operator==(const RankRange&, const RankRange&) = default;
};

/// The four rank arrays: suffix array and inverse for the text and for the
/// reversed text. Reversed-text ranks double as prefix ranks of the text.
struct IndexCore {
  std::vector<Pos> sa, rsa;
  std::vector<Rank> isa, risa;

  Pos n() const { return static_cast<Pos>(sa.size()) - 1; }

  /// Rank of the text prefix ending at position i among all prefixes ordered
  /// by their reversal.
  Rank prefix_rank(Pos i) const { return risa[n() - i + 1]; }
};

inline IndexCore build_index_core(const TextCorpus& text) {
  IndexCore core;
  Pos n = text.size();
  core.sa = build_suffix_array(n, [&](Pos i) { return text.at(i); });
  core.rsa = build_suffix_array(n, [&](Pos i) { return text.at_reversed(i); });
  core.isa = invert_suffix_array(core.sa);
  core.risa = invert_suffix_array(core.rsa);
  return core;
}

/// Ranks k in [lo,hi] such that the suffix starting at sa[k] has the pattern
/// as a prefix. text_at/pat_at are 1-based code accessors; pat codes must be
/// nonzero. probes, when given, counts compared symbol cells.
template <class TextAt, class PatAt>
RankRange find_prefixed_range(const std::vector<Pos>& sa, Pos n, TextAt text_at, PatAt pat_at,
                              std::size_t m, std::uint64_t* probes = nullptr) {
  auto cmp = [&](Pos start) {  // suffix vs pattern over the first m symbols
    for (std::size_t t = 1; t <= m; ++t) {
      Code ct = text_at(start + t - 1);
      Code cp = pat_at(t);
      if (probes) ++*probes;
      if (ct != cp) return ct < cp ? -1 : 1;
    }
    return 0;
  };
  Rank lo = 1, hi = n + 1;  // first rank with suffix >= pattern
  while (lo < hi) {
    Rank mid = lo + (hi - lo) / 2;
    if (cmp(sa[mid]) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  Rank first = lo;
  hi = n + 1;  // first rank with suffix > pattern
  while (lo < hi) {
    Rank mid = lo + (hi - lo) / 2;
    if (cmp(sa[mid]) <= 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return RankRange{first, lo - 1};
}

/// Range over sa of the suffixes prefixed by q[1..m] (q is 1-based codes).
inline RankRange suffix_range(const TextCorpus& text, const IndexCore& core,
                              const std::vector<Code>& q, std::size_t m,
                              std::uint64_t* probes = nullptr) {
  return find_prefixed_range(
      core.sa, text.size(), [&](Pos p) { return text.at(p); },
      [&](std::size_t t) { return q[t]; }, m, probes);
}

/// Per-length pattern range tables.
///   L[i], i in 0..m: ranks over rsa of the text prefixes that end with
///                    q[1..i]; L[0] is the full range.
///   R[i], i in 1..m+1: ranks over sa of the suffixes starting with q[i..m];
///                      R[m+1] is the full range.
struct LRTables {
  std::vector<RankRange> L, R;
};

inline LRTables compute_L_R(const TextCorpus& text, const IndexCore& core,
                            const std::vector<Code>& q, std::size_t m,
                            std::uint64_t* probes = nullptr) {
  Pos n = text.size();
  LRTables t;
  t.L.assign(m + 1, RankRange{1, n});
  t.R.assign(m + 2, RankRange{1, n});
  for (std::size_t i = 1; i <= m; ++i) {
    // reversed prefixes of the text that start with reverse(q[1..i])
    t.L[i] = find_prefixed_range(
        core.rsa, n, [&](Pos p) { return text.at_reversed(p); },
        [&](std::size_t k) { return q[i - k + 1]; }, i, probes);
    t.R[i] = find_prefixed_range(
        core.sa, n, [&](Pos p) { return text.at(p); },
        [&](std::size_t k) { return q[i + k - 1]; }, m - i + 1, probes);
  }
  return t;
}

}  // namespace ed1x
