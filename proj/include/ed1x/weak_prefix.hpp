#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ed1x/common.hpp"
#include "ed1x/core.hpp"
#include "ed1x/hashing.hpp"

namespace ed1x {

/// The 2-fattest number in (a, c]: the value with the most trailing zero
/// bits. Requires a < c.
inline std::uint32_t two_fattest(std::uint32_t a, std::uint32_t c) {
  int k = std::bit_width(a ^ c) - 1;
  return c & ~((1u << k) - 1u);
}

/// Weak prefix search over a sorted set of distinct equal-length strings:
/// given (hashes of prefixes of) a pattern p, returns the range of members
/// prefixed by p using O(log log) hash probes via a z-fast compacted trie.
/// If no member is prefixed by p the result is arbitrary (callers verify).
class WeakPrefixIndex {
 public:
  struct Node {
    std::uint32_t lo = 0, hi = 0;  // member range, 1-based
    std::uint32_t extent = 0;      // string depth of the node
  };

  WeakPrefixIndex() = default;

  /// code_at(member, pos): member in [1, count], pos in [1, len].
  template <class CodeAt>
  static WeakPrefixIndex build(std::size_t count, std::size_t len, CodeAt code_at,
                               const HashParams& hp) {
    WeakPrefixIndex w;
    w.count_ = static_cast<std::uint32_t>(count);
    w.len_ = static_cast<std::uint32_t>(len);
    if (count == 0) return w;
    if (count == 1) {  // the lone leaf is the whole trie
      w.nodes_.push_back({1, 1, static_cast<std::uint32_t>(len)});
      w.root_extent_ = static_cast<std::uint32_t>(len);
      return w;
    }

    // Adjacent lcps; lcp[k] = lcp(member k-1, member k), k in 2..count.
    std::vector<std::uint32_t> lcp(count + 1, 0);
    for (std::size_t k = 2; k <= count; ++k) {
      std::uint32_t l = 0;
      while (l < len && code_at(k - 1, l + 1) == code_at(k, l + 1)) ++l;
      if (l == len) throw std::invalid_argument("weak prefix members must be distinct");
      lcp[k] = l;
    }

    // Internal trie nodes are the maximal lcp intervals; leaves are members.
    struct OpenNode {
      std::uint32_t extent, lo;
    };
    std::vector<OpenNode> stack{{0, 1}};
    auto close_into = [&](std::uint32_t hi) {
      OpenNode top = stack.back();
      stack.pop_back();
      w.nodes_.push_back({top.lo, hi, top.extent});
      return top.lo;
    };
    for (std::uint32_t k = 2; k <= count; ++k) {
      std::uint32_t d = lcp[k], lo = k - 1;
      while (stack.back().extent > d) lo = close_into(k - 1);
      if (stack.back().extent < d) stack.push_back({d, lo});
    }
    while (!stack.empty()) close_into(static_cast<std::uint32_t>(count));
    // Keep only the deepest [1,count] node as root; drop shallower duplicates.
    std::uint32_t root_extent = 0;
    for (const auto& nd : w.nodes_)
      if (nd.lo == 1 && nd.hi == count && nd.extent > root_extent) root_extent = nd.extent;
    std::vector<Node> kept;
    std::uint32_t root_idx = kInvalidIndex;
    for (const auto& nd : w.nodes_) {
      if (nd.lo == 1 && nd.hi == count && nd.extent < root_extent) continue;
      kept.push_back(nd);
      if (nd.lo == 1 && nd.hi == count) root_idx = static_cast<std::uint32_t>(kept.size()) - 1;
    }
    for (std::uint32_t k = 1; k <= count; ++k)
      kept.push_back({k, k, static_cast<std::uint32_t>(len)});
    w.nodes_ = std::move(kept);
    w.root_extent_ = w.nodes_[root_idx].extent;

    // Parent extent of a node = max of the lcps flanking its interval
    // (0 at the boundaries); the root has none.
    auto parent_extent = [&](const Node& nd) -> std::uint32_t {
      std::uint32_t left = nd.lo >= 2 ? lcp[nd.lo] : 0;
      std::uint32_t right = nd.hi + 1 <= count ? lcp[nd.hi + 1] : 0;
      return left > right ? left : right;
    };

    for (std::uint32_t idx = 0; idx < w.nodes_.size(); ++idx) {
      if (idx == root_idx) continue;
      const Node& nd = w.nodes_[idx];
      std::uint32_t pe = parent_extent(nd);
      std::uint32_t handle = two_fattest(pe, nd.extent);
      std::uint64_t h = 0;
      std::uint32_t upto = handle > pe + 1 ? handle : pe + 1;
      std::uint64_t h_handle = 0, h_child = 0;
      for (std::uint32_t t = 1; t <= upto; ++t) {
        h = hp.extend(h, code_at(nd.lo, t), t);
        if (t == handle) h_handle = h;
        if (t == pe + 1) h_child = h;
      }
      w.insert_key(handle, h_handle, idx);
      if (pe + 1 != handle) w.insert_key(pe + 1, h_child, idx);
    }
    return w;
  }

  /// hash_at(g): H(p[1..g]) for 1 <= g <= plen. Counts each map lookup as one
  /// hash probe in stats->hash_probes and tracks wps_calls/wps_max_probes.
  template <class HashAt>
  RankRange query(HashAt hash_at, std::size_t plen, QueryStats* stats) const {
    std::uint64_t probes = 0;
    RankRange out = query_counted(hash_at, plen, probes);
    if (stats) {
      stats->hash_probes += probes;
      stats->wps_calls += 1;
      if (probes > stats->wps_max_probes) stats->wps_max_probes = probes;
    }
    return out;
  }

  template <class HashAt>
  RankRange query_counted(HashAt hash_at, std::size_t plen, std::uint64_t& probes) const {
    if (count_ == 0) return {};
    if (plen <= root_extent_) return {1, count_};
    std::uint32_t a = root_extent_, c = static_cast<std::uint32_t>(plen);
    RankRange z{1, count_};
    std::uint32_t z_extent = root_extent_;
    while (a < c) {
      std::uint32_t f = two_fattest(a, c);
      ++probes;
      const Node* u = probe(f, hash_at(f));
      if (u != nullptr && u->extent >= f) {
        if (u->extent >= plen) return {u->lo, u->hi};
        z = {u->lo, u->hi};
        z_extent = u->extent;
        a = u->extent;
      } else {
        c = f - 1;
      }
    }
    if (z_extent >= plen) return z;
    ++probes;
    const Node* u = probe(z_extent + 1, hash_at(z_extent + 1));
    return u != nullptr ? RankRange{u->lo, u->hi} : z;
  }

  std::uint32_t member_count() const { return count_; }
  std::uint32_t member_len() const { return len_; }
  std::uint32_t root_extent() const { return root_extent_; }
  std::size_t key_count() const { return slots_.size(); }

  // Serialization access.
  const std::vector<Node>& nodes() const { return nodes_; }
  struct Key {
    std::uint32_t len;
    std::uint64_t hash;
    std::uint32_t node;
  };
  std::vector<Key> keys_sorted() const {
    std::vector<Key> ks;
    ks.reserve(slots_.size());
    for (const auto& [h, head] : head_)
      for (std::int32_t s = head; s >= 0; s = slots_[s].next)
        ks.push_back({slots_[s].len, h, slots_[s].node});
    std::sort(ks.begin(), ks.end(), [](const Key& x, const Key& y) {
      return x.len != y.len ? x.len < y.len : x.hash < y.hash;
    });
    return ks;
  }
  static WeakPrefixIndex from_parts(std::uint32_t count, std::uint32_t len,
                                    std::uint32_t root_extent, std::vector<Node> nodes,
                                    const std::vector<Key>& keys) {
    WeakPrefixIndex w;
    w.count_ = count;
    w.len_ = len;
    w.root_extent_ = root_extent;
    w.nodes_ = std::move(nodes);
    for (const auto& k : keys) w.insert_key(k.len, k.hash, k.node);
    return w;
  }

 private:
  void insert_key(std::uint32_t len, std::uint64_t hash, std::uint32_t node) {
    auto [it, fresh] = head_.try_emplace(hash, -1);
    if (!fresh)
      for (std::int32_t s = it->second; s >= 0; s = slots_[s].next)
        if (slots_[s].len == len && slots_[s].node != node)
          throw SeedCollision("weak prefix key collision; the hash seed is not injective");
    slots_.push_back({len, node, it->second});
    it->second = static_cast<std::int32_t>(slots_.size()) - 1;
  }

  const Node* probe(std::uint32_t len, std::uint64_t hash) const {
    auto it = head_.find(hash);
    if (it == head_.end()) return nullptr;
    for (std::int32_t s = it->second; s >= 0; s = slots_[s].next)
      if (slots_[s].len == len) return &nodes_[slots_[s].node];
    return nullptr;
  }

  struct Slot {
    std::uint32_t len;
    std::uint32_t node;
    std::int32_t next;
  };

  std::uint32_t count_ = 0, len_ = 0, root_extent_ = 0;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::int32_t> head_;
  std::vector<Slot> slots_;
};

}  // namespace ed1x
