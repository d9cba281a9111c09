#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "ed1x/common.hpp"
#include "ed1x/core.hpp"
#include "ed1x/factor_set.hpp"
#include "ed1x/hashing.hpp"
#include "ed1x/text.hpp"
#include "ed1x/weak_prefix.hpp"

namespace ed1x {

/// One reported match: the text substring [start, start+len) together with
/// the edit that turns the query into it.
struct Occurrence {
  Pos start = 0;
  std::uint32_t len = 0;
  EditDescriptor edit;
};

/// Materializes the edited pattern (1-based, slot 0 padded).
inline std::vector<Code> apply_edit(const std::vector<Code>& q, std::size_t m,
                                    const EditDescriptor& e) {
  using K = EditDescriptor::Kind;
  std::vector<Code> p(1, kPad);
  for (std::size_t i = 1; i <= m; ++i) {
    if (e.kind == K::Insertion && i == e.pos) p.push_back(e.ch);
    if (e.kind == K::Deletion && i == e.pos) continue;
    p.push_back(e.kind == K::Substitution && i == e.pos ? e.ch : q[i]);
  }
  if (e.kind == K::Insertion && e.pos == m + 1) p.push_back(e.ch);
  return p;
}

/// Shared read-only index state consulted by both engines.
struct QueryEnv {
  const TextCorpus* text = nullptr;
  const IndexCore* core = nullptr;
  const FactorSet* factors = nullptr;
  const WeakPrefixIndex* factor_wps = nullptr;
  const HashParams* hp = nullptr;
  std::uint32_t b = 0;
};

/// Per-pattern precomputed state: codes, hash tables and the prefix/suffix
/// range tables (whose construction cost lands in stats->prep_probes).
struct PatternState {
  std::vector<Code> q;
  std::size_t m = 0;
  QueryHashes qh;
  LRTables lr;
  RankRange exact;  // suffix-array range of the unedited pattern
  QueryStats* stats = nullptr;
};

inline PatternState prepare_pattern(const QueryEnv& env, std::string_view pattern,
                                    QueryStats* stats) {
  if (pattern.empty()) throw std::invalid_argument("query pattern must be non-empty");
  if (pattern.size() > env.b) throw PatternTooLong(pattern.size(), env.b);
  PatternState st;
  st.q = env.text->encode(pattern);
  st.m = pattern.size();
  st.qh = precompute_query_hashes(*env.hp, st.q, st.m);
  st.stats = stats;
  std::uint64_t prep = 0;
  st.lr = compute_L_R(*env.text, *env.core, st.q, st.m, &prep);
  st.exact = st.lr.R[1];
  if (stats) stats->prep_probes += prep;
  return st;
}

/// Exact verification that the edited pattern occurs at text position j,
/// using only the range tables plus O(1) array/text probes.
inline bool check_occurrence(const QueryEnv& env, const PatternState& st,
                             const EditDescriptor& e, Pos j) {
  using K = EditDescriptor::Kind;
  const Pos n = env.text->size();
  const std::size_t m = st.m;
  std::size_t plen = edited_length(e, m);
  if (j < 1 || j + plen - 1 > n) return false;
  auto probes = [&](std::uint64_t k) {
    if (st.stats) st.stats->array_probes += k;
  };
  // T[pos-len+1 .. pos] == q[1..len]?
  auto prefix_ok = [&](std::size_t len, Pos endpos) {
    if (len == 0) return true;
    probes(1);
    return st.lr.L[len].contains(env.core->prefix_rank(endpos));
  };
  // T[textpos ..] starts with q[start..m]?
  auto suffix_ok = [&](std::size_t start, Pos textpos) {
    if (start == m + 1) return true;
    probes(1);
    return st.lr.R[start].contains(env.core->isa[textpos]);
  };
  auto char_is = [&](Pos pos, Code c) {
    probes(1);
    return env.text->at(pos) == c;
  };
  const std::uint32_t i = e.pos;
  switch (e.kind) {
    case K::Exact: return suffix_ok(1, j);
    case K::Deletion: return prefix_ok(i - 1, j + i - 2) && suffix_ok(i + 1, j + i - 1);
    case K::Substitution:
      return prefix_ok(i - 1, j + i - 2) && char_is(j + i - 1, e.ch) && suffix_ok(i + 1, j + i);
    case K::Insertion:
      return prefix_ok(i - 1, j + i - 2) && char_is(j + i - 1, e.ch) && suffix_ok(i, j + i);
  }
  return false;
}

/// Finds every text occurrence of the edited pattern and appends them to
/// out. Uses the factor index (weak prefix search + one verification) when
/// the edited length fits in b; the one oversized case, an insertion into a
/// length-b pattern, falls back to a direct suffix-array search.
inline bool query_modified_pattern(const QueryEnv& env, const PatternState& st,
                                   const EditDescriptor& e, std::vector<Occurrence>* out) {
  std::size_t plen = edited_length(e, st.m);
  if (plen == 0) return false;
  RankRange ranks;
  if (plen > env.b) {
    std::uint64_t probes = 0;
    auto pat_at = [&](std::size_t t) -> Code {
      if (t < e.pos) return st.q[t];
      if (t == e.pos) return e.ch;
      return st.q[t - 1];
    };
    ranks = find_prefixed_range(
        env.core->sa, env.text->size(), [&](Pos p) { return env.text->at(p); }, pat_at, plen,
        &probes);
    if (st.stats) st.stats->array_probes += probes;
    if (ranks.empty()) return false;
  } else {
    RankRange members = env.factor_wps->query(
        [&](std::uint32_t g) { return hash_edited_prefix(st.qh, e, g); }, plen, st.stats);
    ranks = env.factors->to_rank_range(members);
    if (ranks.empty()) return false;
    if (!check_occurrence(env, st, e, env.core->sa[ranks.lo])) return false;
  }
  if (out)
    for (Rank k = ranks.lo; k <= ranks.hi; ++k)
      out->push_back({env.core->sa[k], static_cast<std::uint32_t>(plen), e});
  return true;
}

/// Keep-first dedup on (start, length), then sorted output.
class OccurrenceCollector {
 public:
  void add(const std::vector<Occurrence>& batch) {
    for (const auto& o : batch) acc_.try_emplace({o.start, o.len}, o.edit);
  }
  std::vector<Occurrence> sorted() const {
    std::vector<Occurrence> out;
    out.reserve(acc_.size());
    for (const auto& [key, edit] : acc_) out.push_back({key.first, key.second, edit});
    return out;
  }

 private:
  std::map<std::pair<Pos, std::uint32_t>, EditDescriptor> acc_;
};

}  // namespace ed1x
