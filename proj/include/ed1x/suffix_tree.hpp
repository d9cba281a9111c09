#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ed1x/core.hpp"
#include "ed1x/text.hpp"

namespace ed1x {

/// Suffix tree derived from the suffix array and lcp array. Every suffix is
/// treated as ending in a virtual terminator (code 0), so each of the n
/// suffixes owns a distinct leaf and a leaf's string depth is its suffix
/// length plus one. Node 0 is always the root (string depth 0).
class SuffixTree {
 public:
  struct Node {
    std::uint32_t parent = 0;
    Rank lo = 0, hi = 0;      // suffix-array rank range below the node
    std::uint32_t depth = 0;  // string depth
    std::uint32_t child_first = 0, child_count = 0;  // into children_
  };

  static SuffixTree build(const TextCorpus& text, const IndexCore& core,
                          const std::vector<Pos>& lcp) {
    SuffixTree st;
    const Pos n = text.size();
    struct Raw {
      Rank lo, hi;
      std::uint32_t depth;
      bool leaf;
    };
    std::vector<Raw> raw;
    raw.reserve(2 * n + 2);

    // Internal nodes are the maximal lcp intervals (plus a depth-0 root).
    struct OpenNode {
      std::uint32_t depth;
      Rank lo;
    };
    std::vector<OpenNode> stack{{0, 1}};
    auto close_into = [&](Rank hi) {
      OpenNode top = stack.back();
      stack.pop_back();
      raw.push_back({top.lo, hi, top.depth, false});
      return top.lo;
    };
    for (Rank k = 2; k <= n; ++k) {
      std::uint32_t d = lcp[k];
      Rank lo = k - 1;
      while (stack.back().depth > d) lo = close_into(k - 1);
      if (stack.back().depth < d) stack.push_back({d, lo});
    }
    while (!stack.empty()) close_into(n);
    for (Rank k = 1; k <= n; ++k)
      raw.push_back({k, k, n - core.sa[k] + 2, true});  // suffix length + terminator

    // Nesting order: outer intervals first; at equal intervals, shallower
    // first. Leaves follow the internals that start at the same rank.
    std::vector<std::uint32_t> order(raw.size());
    for (std::uint32_t i = 0; i < raw.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
      const Raw &a = raw[x], &b = raw[y];
      if (a.lo != b.lo) return a.lo < b.lo;
      if (a.hi != b.hi) return a.hi > b.hi;
      return a.depth < b.depth;
    });

    st.nodes_.resize(raw.size());
    st.leaf_of_rank_.assign(n + 1, 0);
    std::vector<std::uint32_t> chain;  // current nesting chain, new ids
    for (std::uint32_t oi = 0; oi < order.size(); ++oi) {
      const Raw& r = raw[order[oi]];
      while (!chain.empty() && st.nodes_[chain.back()].hi < r.lo) chain.pop_back();
      std::uint32_t id = oi;  // nesting order doubles as a topological id
      st.nodes_[id] = {chain.empty() ? id : chain.back(), r.lo, r.hi, r.depth, 0, 0};
      if (r.leaf)
        st.leaf_of_rank_[r.lo] = id;
      else
        chain.push_back(id);
    }

    // Children, grouped per parent and sorted by first edge code.
    std::uint32_t count = static_cast<std::uint32_t>(st.nodes_.size());
    std::vector<std::uint32_t> per_parent(count + 1, 0);
    for (std::uint32_t v = 1; v < count; ++v) ++per_parent[st.nodes_[v].parent + 1];
    for (std::uint32_t v = 1; v <= count; ++v) per_parent[v] += per_parent[v - 1];
    st.children_.resize(count - 1);
    for (std::uint32_t v = 0; v < count; ++v) {
      st.nodes_[v].child_first = per_parent[v];
      st.nodes_[v].child_count = 0;
    }
    for (std::uint32_t v = 1; v < count; ++v) {
      Node& p = st.nodes_[st.nodes_[v].parent];
      st.children_[p.child_first + p.child_count++] = v;
    }
    for (std::uint32_t v = 0; v < count; ++v) {
      Node& p = st.nodes_[v];
      std::sort(st.children_.begin() + p.child_first,
                st.children_.begin() + p.child_first + p.child_count,
                [&](std::uint32_t x, std::uint32_t y) {
                  return st.edge_code(text, core, x) < st.edge_code(text, core, y);
                });
    }
    return st;
  }

  const Node& node(std::uint32_t v) const { return nodes_[v]; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(nodes_.size()); }
  std::uint32_t root() const { return 0; }
  bool is_leaf(std::uint32_t v) const { return nodes_[v].lo == nodes_[v].hi && v != 0; }
  std::uint32_t leaf_of_rank(Rank k) const { return leaf_of_rank_[k]; }
  std::uint32_t leaf_count(std::uint32_t v) const { return nodes_[v].hi - nodes_[v].lo + 1; }

  /// First code on the edge from parent(v) into v (0 = terminator edge).
  Code edge_code(const TextCorpus& text, const IndexCore& core, std::uint32_t v) const {
    const Node& nd = nodes_[v];
    return text.at(core.sa[nd.lo] + nodes_[nd.parent].depth);
  }

  /// Code at string depth t (1-based) along the path to v; 0 for the
  /// terminator slot of a leaf.
  Code path_code(const TextCorpus& text, const IndexCore& core, std::uint32_t v,
                 std::uint32_t t) const {
    return text.at(core.sa[nodes_[v].lo] + t - 1);
  }

  /// Child of v whose edge starts with code c, or kInvalidIndex.
  std::uint32_t find_child(const TextCorpus& text, const IndexCore& core, std::uint32_t v,
                           Code c) const {
    const Node& nd = nodes_[v];
    std::uint32_t lo = nd.child_first, hi = nd.child_first + nd.child_count;
    while (lo < hi) {
      std::uint32_t mid = (lo + hi) / 2;
      if (edge_code(text, core, children_[mid]) < c)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < nd.child_first + nd.child_count && edge_code(text, core, children_[lo]) == c)
      return children_[lo];
    return kInvalidIndex;
  }

  /// Children of v in edge-code order.
  const std::uint32_t* children_begin(std::uint32_t v) const {
    return children_.data() + nodes_[v].child_first;
  }
  const std::uint32_t* children_end(std::uint32_t v) const {
    return children_begin(v) + nodes_[v].child_count;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> children_;
  std::vector<std::uint32_t> leaf_of_rank_;
};

}  // namespace ed1x
