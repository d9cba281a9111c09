#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ed1x/centroid.hpp"
#include "ed1x/colors.hpp"
#include "ed1x/core.hpp"
#include "ed1x/hashing.hpp"
#include "ed1x/suffix_tree.hpp"
#include "ed1x/text.hpp"
#include "ed1x/weak_prefix.hpp"

namespace ed1x {

/// The three per-path correction families. Entries are suffixes hanging off
/// a path node via a light edge, modified at the node's branching position:
///   Sub1: the light symbol replaced by the heavy (branching) symbol,
///   Sub2: the light symbol replaced by the wildcard,
///   Del1: the light symbol deleted (kept only when the next symbol already
///         continues like the heavy edge).
enum class TreeKind : std::uint8_t { Sub1, Sub2, Del1 };
inline constexpr std::uint32_t kTreeKinds = 3;

/// One modified suffix. Colors pack the information needed to re-derive the
/// matching edit: Sub1/Del1 use original_symbol * (b+2) + position, Sub2
/// uses the original symbol alone.
struct CorrectionEntry {
  Pos suffix = 0;          // text start of the unmodified suffix
  std::uint16_t pos = 0;   // 1-based modified position
  Code repl = 0;           // symbol written at pos (Sub1: heavy symbol, Sub2: wildcard)
  std::uint32_t color = 0;
};

struct PositionalColor {
  Code ch;
  std::uint32_t pos;
};
inline std::uint32_t encode_positional_color(Code ch, std::uint32_t pos, std::uint32_t b) {
  return static_cast<std::uint32_t>(ch) * (b + 2) + pos;
}
inline PositionalColor decode_positional_color(std::uint32_t color, std::uint32_t b) {
  return {static_cast<Code>(color / (b + 2)), color % (b + 2)};
}

/// Code of the modified suffix at 1-based position t (0-padded at the end).
inline Code correction_entry_code(const TextCorpus& text, const CorrectionEntry& e,
                                  TreeKind kind, std::size_t t) {
  if (kind == TreeKind::Del1)
    return text.at(e.suffix + static_cast<Pos>(t) - (t < e.pos ? 1 : 0));
  return t == e.pos ? e.repl : text.at(e.suffix + static_cast<Pos>(t) - 1);
}

/// Walks one path's nodes and feeds every correction entry of the given
/// family to sink(entry). This is the single definition of what a tree
/// contains; both the builder and the bound-counting diagnostics use it.
template <class Sink>
void enumerate_correction_entries(const TextCorpus& text, const IndexCore& core,
                                  const SuffixTree& st, const CentroidDecomposition& decomp,
                                  std::uint32_t b, std::uint32_t path, TreeKind kind,
                                  Sink&& sink) {
  const Code wildcard = text.wildcard();
  for (std::uint32_t v : decomp.paths[path]) {
    std::uint32_t heavy = decomp.heavy[v];
    if (heavy == kInvalidIndex) continue;  // the path's leaf
    std::uint32_t pos = st.node(v).depth + 1;
    if (pos > b) continue;  // modification would land outside the factor window
    Code heavy_code = decomp.branch[v];
    if (heavy_code == kPad && kind != TreeKind::Sub2) continue;
    for (const std::uint32_t* c = st.children_begin(v); c != st.children_end(v); ++c) {
      if (*c == heavy) continue;
      Code light_code = st.edge_code(text, core, *c);
      if (light_code == kPad) continue;  // a bare terminator edge has no symbol to modify
      const SuffixTree::Node& w = st.node(*c);
      for (Rank k = w.lo; k <= w.hi; ++k) {
        Pos s = core.sa[k];
        switch (kind) {
          case TreeKind::Sub1:
            sink(CorrectionEntry{s, static_cast<std::uint16_t>(pos), heavy_code,
                                 encode_positional_color(light_code, pos, b)});
            break;
          case TreeKind::Sub2:
            sink(CorrectionEntry{s, static_cast<std::uint16_t>(pos), wildcard,
                                 static_cast<std::uint32_t>(light_code)});
            break;
          case TreeKind::Del1:
            if (text.at(s + pos) == heavy_code)
              sink(CorrectionEntry{s, static_cast<std::uint16_t>(pos), 0,
                                   encode_positional_color(light_code, pos, b)});
            break;
        }
      }
    }
  }
}

/// Entries sorted by modified factor, before any hashing exists.
struct RawCorrectionTree {
  std::uint32_t path = 0;
  TreeKind kind = TreeKind::Sub1;
  std::vector<CorrectionEntry> entries;        // sorted
  std::vector<std::uint32_t> member_first;     // first entry index per group, 1-based
  std::vector<std::uint32_t> counts;           // group sizes, 1-based
  std::vector<std::uint64_t> count_prefix;

  std::size_t member_count() const { return counts.empty() ? 0 : counts.size() - 1; }
  Code member_code(const TextCorpus& text, std::size_t k, std::size_t t) const {
    return correction_entry_code(text, entries[member_first[k]], kind, t);
  }
};

inline RawCorrectionTree build_raw_correction_tree(const TextCorpus& text, const IndexCore& core,
                                                   const SuffixTree& st,
                                                   const CentroidDecomposition& decomp,
                                                   std::uint32_t b, std::uint32_t path,
                                                   TreeKind kind) {
  RawCorrectionTree raw;
  raw.path = path;
  raw.kind = kind;
  enumerate_correction_entries(text, core, st, decomp, b, path, kind,
                               [&](const CorrectionEntry& e) { raw.entries.push_back(e); });
  auto cmp_codes = [&](const CorrectionEntry& x, const CorrectionEntry& y) {
    for (std::size_t t = 1; t <= b; ++t) {
      Code a = correction_entry_code(text, x, kind, t);
      Code c = correction_entry_code(text, y, kind, t);
      if (a != c) return a < c ? -1 : 1;
    }
    return 0;
  };
  std::sort(raw.entries.begin(), raw.entries.end(),
            [&](const CorrectionEntry& x, const CorrectionEntry& y) {
              int c = cmp_codes(x, y);
              if (c != 0) return c < 0;
              if (x.color != y.color) return x.color < y.color;
              return x.suffix < y.suffix;
            });
  raw.member_first.assign(1, 0);
  raw.counts.assign(1, 0);
  raw.count_prefix.assign(1, 0);
  for (std::uint32_t i = 0; i < raw.entries.size(); ++i) {
    if (i == 0 || cmp_codes(raw.entries[i - 1], raw.entries[i]) != 0) {
      raw.member_first.push_back(i);
      raw.counts.push_back(1);
    } else {
      raw.counts.back() += 1;
    }
  }
  for (std::size_t k = 1; k < raw.counts.size(); ++k)
    raw.count_prefix.push_back(raw.count_prefix[k - 1] + raw.counts[k]);
  return raw;
}

/// Query-ready correction tree: group counts, per-entry colors with a
/// distinct-color reporter, and a weak prefix search over the groups.
struct CorrectionTree {
  std::uint32_t path = 0;
  TreeKind kind = TreeKind::Sub1;
  std::vector<std::uint32_t> counts;  // 1-based
  std::vector<std::uint64_t> count_prefix;
  ColorReporter reporter;
  WeakPrefixIndex wps;
  std::vector<CorrectionEntry> entries;  // retained for diagnostics; not used in queries

  std::size_t entry_count() const { return reporter.size(); }
  RankRange to_entry_range(RankRange members) const {
    if (members.empty()) return {};
    return {static_cast<Rank>(count_prefix[members.lo - 1] + 1),
            static_cast<Rank>(count_prefix[members.hi])};
  }
};

inline CorrectionTree finalize_correction_tree(const TextCorpus& text, RawCorrectionTree raw,
                                               std::uint32_t b, const HashParams& hp) {
  CorrectionTree tree;
  tree.path = raw.path;
  tree.kind = raw.kind;
  tree.counts = raw.counts;
  tree.count_prefix = raw.count_prefix;
  std::vector<std::uint32_t> colors(raw.entries.size() + 1, 0);
  for (std::size_t i = 0; i < raw.entries.size(); ++i) colors[i + 1] = raw.entries[i].color;
  tree.reporter = ColorReporter(std::move(colors));
  tree.wps = WeakPrefixIndex::build(
      raw.member_count(), b,
      [&](std::size_t k, std::size_t t) { return raw.member_code(text, k, t); }, hp);
  tree.entries = std::move(raw.entries);
  return tree;
}

}  // namespace ed1x
