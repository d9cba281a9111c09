#pragma once

#include <cstdint>
#include <vector>

#include "ed1x/suffix_tree.hpp"

namespace ed1x {

/// Heavy-path decomposition of the suffix tree by leaf count: each internal
/// node keeps its child with the most leaves (ties broken towards the
/// smallest first edge code, so a terminator edge wins every tie). Paths are
/// the maximal heavy chains; each one starts at the root or just below a
/// light edge, and every root-to-leaf walk crosses at most floor(log2 L)+1
/// light edges for L leaves.
struct CentroidDecomposition {
  std::vector<std::uint32_t> heavy;    // heavy child per node; kInvalidIndex at leaves
  std::vector<Code> branch;            // first code of the heavy edge
  std::vector<std::uint32_t> path_id;  // per node
  std::vector<std::vector<std::uint32_t>> paths;  // top-down node lists

  std::uint32_t path_count() const { return static_cast<std::uint32_t>(paths.size()); }
};

inline CentroidDecomposition decompose_by_heavy_leaf(const TextCorpus& text,
                                                     const IndexCore& core,
                                                     const SuffixTree& st) {
  CentroidDecomposition d;
  std::uint32_t count = st.size();
  d.heavy.assign(count, kInvalidIndex);
  d.branch.assign(count, 0);
  d.path_id.assign(count, kInvalidIndex);
  for (std::uint32_t v = 0; v < count; ++v) {
    std::uint32_t best = kInvalidIndex, best_leaves = 0;
    for (const std::uint32_t* c = st.children_begin(v); c != st.children_end(v); ++c) {
      std::uint32_t leaves = st.leaf_count(*c);
      if (leaves > best_leaves) {  // children come sorted by edge code, so
        best = *c;                 // the first maximum has the smallest code
        best_leaves = leaves;
      }
    }
    d.heavy[v] = best;
    if (best != kInvalidIndex) d.branch[v] = st.edge_code(text, core, best);
  }
  // Walk heavy chains from every path head (the root, or a light child).
  for (std::uint32_t v = 0; v < count; ++v) {
    bool head = v == st.root() || d.heavy[st.node(v).parent] != v;
    if (!head) continue;
    std::uint32_t id = d.path_count();
    d.paths.emplace_back();
    for (std::uint32_t u = v; u != kInvalidIndex; u = d.heavy[u]) {
      d.path_id[u] = id;
      d.paths[id].push_back(u);
    }
  }
  return d;
}

}  // namespace ed1x
