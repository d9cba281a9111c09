#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "ed1x/centroid.hpp"
#include "ed1x/correction.hpp"
#include "ed1x/matcher.hpp"
#include "ed1x/suffix_tree.hpp"

namespace ed1x {

/// Alphabet-independent engine state: the suffix tree, its heavy-path
/// decomposition, and the non-empty correction trees, addressable by
/// (path, family).
struct CentroidIndex {
  SuffixTree st;
  CentroidDecomposition decomp;
  std::vector<CorrectionTree> trees;
  std::vector<std::array<std::uint32_t, kTreeKinds>> tree_of;  // per path; kInvalidIndex = none

  const CorrectionTree* tree(std::uint32_t path, TreeKind kind) const {
    std::uint32_t idx = tree_of[path][static_cast<std::uint32_t>(kind)];
    return idx == kInvalidIndex ? nullptr : &trees[idx];
  }
};

/// One divergence of the pattern from a heavy path: while standing at string
/// depth d on `path`, the pattern wanted symbol `took` but the heavy edge
/// continues with `heavy`.
struct PathEvent {
  std::uint32_t path = 0;
  std::uint32_t d = 0;
  Code took = 0;
  Code heavy = 0;
};

/// Outcome of walking the pattern through the suffix tree. `records` holds
/// the divergences where a matching light edge existed and the walk went on;
/// the terminal event, if the walk fell off, keeps the same information.
struct TraversalResult {
  enum class End { Exhausted, AtBranching, MidEdge } end = End::Exhausted;
  std::vector<PathEvent> records;
  PathEvent terminal;           // valid unless end == Exhausted
  std::uint32_t end_path = 0;   // path active when the walk stopped
};

inline TraversalResult traverse_pattern(const QueryEnv& env, const CentroidIndex& ci,
                                        const std::vector<Code>& q, std::size_t m) {
  const TextCorpus& text = *env.text;
  const IndexCore& core = *env.core;
  TraversalResult tr;
  std::uint32_t cur = ci.st.root();
  std::uint32_t cur_path = ci.decomp.path_id[cur];
  std::uint32_t dep = 0;
  for (;;) {
    if (dep == m) {
      tr.end = TraversalResult::End::Exhausted;
      tr.end_path = cur_path;
      return tr;
    }
    Code x = q[dep + 1];
    Code heavy_code = ci.decomp.branch[cur];
    std::uint32_t child;
    if (x == heavy_code) {
      child = ci.decomp.heavy[cur];
    } else {
      child = ci.st.find_child(text, core, cur, x);
      if (child == kInvalidIndex) {
        tr.end = TraversalResult::End::AtBranching;
        tr.terminal = {cur_path, dep, x, heavy_code};
        tr.end_path = cur_path;
        return tr;
      }
      tr.records.push_back({cur_path, dep, x, heavy_code});
      cur_path = ci.decomp.path_id[child];
    }
    std::uint32_t cd = ci.st.node(child).depth;
    std::uint32_t limit = cd < m ? cd : static_cast<std::uint32_t>(m);
    std::uint32_t t = dep + 2;
    Code lab = 0;
    for (; t <= limit; ++t) {
      lab = ci.st.path_code(text, core, child, t);
      if (q[t] != lab) break;
    }
    if (t <= limit) {  // mismatch inside the edge label
      tr.end = TraversalResult::End::MidEdge;
      tr.terminal = {cur_path, t - 1, q[t], lab};
      tr.end_path = cur_path;
      return tr;
    }
    if (cd > m) {  // pattern ran out inside the edge
      tr.end = TraversalResult::End::Exhausted;
      tr.end_path = cur_path;
      return tr;
    }
    dep = cd;
    cur = child;
  }
}

namespace detail {

/// Queries one correction tree: weak-prefix-search the (implicitly edited)
/// pattern against the tree's groups, then turn each distinct color in the
/// resulting entry range into a concrete edit and collect its occurrences.
/// `prelim`, when set, enables the cheap rejection tests that keep
/// mismatched ranges from being enumerated: a matching range's first color
/// must yield an edit under `prelim` whose occurrences are non-empty, so a
/// failure proves the whole range stale. That implication only holds where
/// a matching range cannot mix colors of different validity, which is the
/// case for every diverged query.
template <class HashAt, class Prelim, class Apply>
void query_correction_tree(const QueryEnv& env, const PatternState& st,
                           const CorrectionTree& tree, HashAt hash_at, std::size_t plen,
                           const Prelim* prelim, Apply apply, OccurrenceCollector* acc) {
  RankRange members = tree.wps.query(hash_at, plen, st.stats);
  RankRange range = tree.to_entry_range(members);
  if (range.empty()) return;
  std::vector<Occurrence> batch;
  if (prelim != nullptr) {
    std::uint32_t t0 = tree.reporter.first_position(range.lo, range.hi, st.stats);
    std::optional<EditDescriptor> e0 = (*prelim)(tree.reporter.color_at(t0));
    if (!e0) return;
    if (!query_modified_pattern(env, st, *e0, &batch)) return;
    acc->add(batch);
  }
  tree.reporter.report_distinct(range.lo, range.hi, st.stats,
                                [&](std::uint32_t, std::uint32_t color) {
                                  if (std::optional<EditDescriptor> e = apply(color)) {
                                    batch.clear();
                                    query_modified_pattern(env, st, *e, &batch);
                                    acc->add(batch);
                                  }
                                  return true;
                                });
}

/// Sub1/Del1 lookups with the unedited pattern. A color (symbol, pos) is
/// applicable only below the divergence depth and when it changes something.
inline void run_positional_trees(const QueryEnv& env, const PatternState& st,
                                 const CentroidIndex& ci, std::uint32_t path, std::uint32_t d,
                                 bool abortable, OccurrenceCollector* acc) {
  for (TreeKind kind : {TreeKind::Sub1, TreeKind::Del1}) {
    const CorrectionTree* tree = ci.tree(path, kind);
    if (tree == nullptr) continue;
    auto apply = [&](std::uint32_t color) -> std::optional<EditDescriptor> {
      PositionalColor pc = decode_positional_color(color, env.b);
      if (pc.pos < 1 || pc.pos > d || st.q[pc.pos] == pc.ch) return std::nullopt;
      if (kind == TreeKind::Sub1)
        return EditDescriptor{EditDescriptor::Kind::Substitution, pc.pos, pc.ch};
      return EditDescriptor{EditDescriptor::Kind::Insertion, pc.pos, pc.ch};
    };
    query_correction_tree(
        env, st, *tree, [&](std::uint32_t g) { return st.qh.pre[g]; }, st.m,
        abortable ? &apply : nullptr, apply, acc);
  }
}

/// Sub2 lookups with the wildcard substituted (resp. inserted) at the
/// divergence: each color symbol spells out one substitution (insertion)
/// at that position. Symbols equal to the pattern's own symbol or to the
/// heavy symbol are covered by the exact range and the direct lookups.
inline void run_wildcard_tree(const QueryEnv& env, const PatternState& st,
                              const CentroidIndex& ci, const PathEvent& ev,
                              OccurrenceCollector* acc) {
  const CorrectionTree* tree = ci.tree(ev.path, TreeKind::Sub2);
  if (tree == nullptr) return;
  const Code alpha = env.text->wildcard();
  for (EditDescriptor::Kind kind :
       {EditDescriptor::Kind::Substitution, EditDescriptor::Kind::Insertion}) {
    EditDescriptor probe{kind, ev.d + 1, alpha};
    std::size_t elen = edited_length(probe, st.m);
    std::size_t plen = std::min(elen, static_cast<std::size_t>(env.b));
    // A matching range's first color may itself be the pattern's or the
    // heavy symbol, so validate with the raw edit and filter only when
    // reporting (those two cases are found by other steps).
    auto prelim = [&](std::uint32_t color) -> std::optional<EditDescriptor> {
      return EditDescriptor{kind, ev.d + 1, static_cast<Code>(color)};
    };
    auto apply = [&](std::uint32_t color) -> std::optional<EditDescriptor> {
      Code ch = static_cast<Code>(color);
      if (ch == ev.took || ch == ev.heavy) return std::nullopt;
      return EditDescriptor{kind, ev.d + 1, ch};
    };
    // When the edited pattern overflows the factor window (an insertion into
    // a maximum-length pattern), a match certifies only its first b symbols,
    // so one color's failure says nothing about its siblings: no rejection.
    query_correction_tree(
        env, st, *tree, [&](std::uint32_t g) { return hash_edited_prefix(st.qh, probe, g); },
        plen, elen <= env.b ? &prelim : nullptr, apply, acc);
  }
}

/// The heavy continuation itself is never in any correction tree, so try it
/// directly as a substitution and as an insertion at the divergence.
inline void run_direct_heavy(const QueryEnv& env, const PatternState& st, const PathEvent& ev,
                             OccurrenceCollector* acc) {
  if (ev.heavy == kPad) return;  // a terminator continuation spells no symbol
  std::vector<Occurrence> batch;
  query_modified_pattern(env, st, {EditDescriptor::Kind::Substitution, ev.d + 1, ev.heavy},
                         &batch);
  acc->add(batch);
  batch.clear();
  query_modified_pattern(env, st, {EditDescriptor::Kind::Insertion, ev.d + 1, ev.heavy}, &batch);
  acc->add(batch);
}

}  // namespace detail

/// Answers a one-error query through the centroid-path machinery: the exact
/// range (extended by one appended symbol), the m deletion candidates, and
/// for every divergence of the pattern from a heavy path the Sub1/Sub2/Del1
/// correction trees plus the direct heavy continuation.
inline std::vector<Occurrence> query_one_error_large(const QueryEnv& env,
                                                     const CentroidIndex& ci,
                                                     std::string_view pattern,
                                                     QueryStats* stats = nullptr) {
  PatternState st = prepare_pattern(env, pattern, stats);
  const std::size_t m = st.m;
  const Pos n = env.text->size();
  OccurrenceCollector acc;
  std::vector<Occurrence> batch;

  // Exact occurrences, each possibly extended by whatever symbol follows it.
  for (Rank k = st.exact.lo; k <= st.exact.hi; ++k) {
    Pos j = env.core->sa[k];
    batch.push_back({j, static_cast<std::uint32_t>(m), {EditDescriptor::Kind::Exact, 0, 0}});
    if (j + m <= n) {
      if (stats) ++stats->array_probes;
      batch.push_back({j, static_cast<std::uint32_t>(m + 1),
                       {EditDescriptor::Kind::Insertion, static_cast<std::uint32_t>(m + 1),
                        env.text->at(j + static_cast<Pos>(m))}});
    }
  }
  acc.add(batch);

  if (m >= 2)
    for (std::uint32_t i = 1; i <= m; ++i) {
      batch.clear();
      query_modified_pattern(env, st, {EditDescriptor::Kind::Deletion, i, 0}, &batch);
      acc.add(batch);
    }

  TraversalResult tr = traverse_pattern(env, ci, st.q, m);
  auto full_divergence = [&](const PathEvent& ev) {
    detail::run_positional_trees(env, st, ci, ev.path, ev.d, true, &acc);
    detail::run_wildcard_tree(env, st, ci, ev, &acc);
    detail::run_direct_heavy(env, st, ev, &acc);
  };
  for (const PathEvent& ev : tr.records) full_divergence(ev);
  switch (tr.end) {
    case TraversalResult::End::AtBranching: full_divergence(tr.terminal); break;
    case TraversalResult::End::MidEdge:
      detail::run_positional_trees(env, st, ci, tr.terminal.path, tr.terminal.d, true, &acc);
      detail::run_direct_heavy(env, st, tr.terminal, &acc);
      break;
    case TraversalResult::End::Exhausted:
      detail::run_positional_trees(env, st, ci, tr.end_path, static_cast<std::uint32_t>(m),
                                   false, &acc);
      break;
  }
  return acc.sorted();
}

}  // namespace ed1x
