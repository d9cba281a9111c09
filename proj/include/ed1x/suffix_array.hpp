#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ed1x/common.hpp"

namespace ed1x {

/// Suffix array over seq[1..n] by prefix doubling with counting sort.
/// Returned vector is n+1 long with slot 0 unused; sa[k] is the 1-based
/// start of the k-th smallest suffix. A suffix that is a proper prefix of
/// another sorts first, as if terminated by a symbol below every code.
template <class CodeAt>
std::vector<Pos> build_suffix_array(Pos n, CodeAt code_at) {
  std::vector<std::uint32_t> rank(n + 2, 0), tmp(n + 2, 0), cnt;
  std::vector<Pos> sa(n + 1), order(n), next(n);
  for (Pos i = 1; i <= n; ++i) rank[i] = code_at(i);  // codes >= 1, 0 = past end
  std::uint32_t classes = 0;
  for (Pos i = 1; i <= n; ++i) classes = std::max(classes, rank[i]);
  for (Pos i = 0; i < n; ++i) order[i] = i + 1;
  std::stable_sort(order.begin(), order.end(),
                   [&](Pos a, Pos b) { return rank[a] < rank[b]; });

  for (Pos k = 1;; k <<= 1) {
    // order currently sorts suffixes by their first k symbols; refine to 2k
    // by a counting sort on the rank of the tail half.
    auto tail = [&](Pos p) -> std::uint32_t { return p + k <= n ? rank[p + k] : 0; };
    cnt.assign(classes + 2, 0);
    for (Pos i = 0; i < n; ++i) ++cnt[tail(order[i])];
    std::uint32_t run = 0;
    for (std::uint32_t v = 0; v < cnt.size(); ++v) {
      std::uint32_t c = cnt[v];
      cnt[v] = run;
      run += c;
    }
    for (Pos i = 0; i < n; ++i) next[cnt[tail(order[i])]++] = order[i];
    // next is sorted by (head rank via stability pending, tail): redo head pass
    cnt.assign(classes + 2, 0);
    for (Pos i = 0; i < n; ++i) ++cnt[rank[next[i]]];
    run = 0;
    for (std::uint32_t v = 0; v < cnt.size(); ++v) {
      std::uint32_t c = cnt[v];
      cnt[v] = run;
      run += c;
    }
    for (Pos i = 0; i < n; ++i) order[cnt[rank[next[i]]]++] = next[i];

    std::uint32_t cls = 1;
    tmp[order[0]] = 1;
    for (Pos i = 1; i < n; ++i) {
      if (rank[order[i]] != rank[order[i - 1]] || tail(order[i]) != tail(order[i - 1])) ++cls;
      tmp[order[i]] = cls;
    }
    for (Pos i = 1; i <= n; ++i) rank[i] = tmp[i];
    classes = cls;
    if (cls == n) break;
  }
  for (Pos i = 0; i < n; ++i) sa[i + 1] = order[i];
  return sa;
}

inline std::vector<Rank> invert_suffix_array(const std::vector<Pos>& sa) {
  std::vector<Rank> isa(sa.size());
  for (Rank k = 1; k < sa.size(); ++k) isa[sa[k]] = k;
  return isa;
}

/// Kasai's algorithm; lcp[k] for k in 2..n is the longest common prefix of
/// the suffixes ranked k-1 and k, lcp[1] = 0.
template <class CodeAt>
std::vector<Pos> build_lcp(Pos n, CodeAt code_at, const std::vector<Pos>& sa,
                           const std::vector<Rank>& isa) {
  std::vector<Pos> lcp(n + 1, 0);
  Pos h = 0;
  for (Pos p = 1; p <= n; ++p) {
    Rank k = isa[p];
    if (k > 1) {
      Pos q = sa[k - 1];
      while (p + h <= n && q + h <= n && code_at(p + h) == code_at(q + h)) ++h;
      lcp[k] = h;
      if (h > 0) --h;
    } else {
      h = 0;
    }
  }
  return lcp;
}

}  // namespace ed1x
