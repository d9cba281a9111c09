#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ed1x/common.hpp"
#include "ed1x/hashing.hpp"

namespace ed1x {

/// One family of equal-length strings whose distinct prefixes must hash
/// injectively. Members must be lexicographically sorted and distinct.
struct PrefixSource {
  std::string name;
  std::size_t count = 0;
  std::size_t len = 0;
  // code_at(member, pos): 1-based pos in [1, len], member in [0, count).
  std::function<Code(std::size_t, std::size_t)> code_at;
};

struct SeedResult {
  HashParams params;
  int attempts = 0;  // number of candidate seeds tried (>= 1)
};

namespace detail {

// Hash -> chain of (len, owner member) records, so cross-length collisions
// on the raw 64-bit value stay distinguishable.
class PrefixHashSet {
 public:
  void clear(std::size_t expect) {
    head_.clear();
    head_.reserve(expect);
    slots_.clear();
  }

  // Returns false on an injectivity violation (two different strings of the
  // same length sharing a hash). `equal_members` compares the stored owner's
  // prefix with the current one.
  template <class EqualMembers>
  bool insert(std::uint64_t h, std::uint32_t len, std::uint32_t member,
              EqualMembers equal_members) {
    auto [it, fresh] = head_.try_emplace(h, -1);
    if (!fresh) {
      for (std::int32_t s = it->second; s >= 0; s = slots_[s].next) {
        if (slots_[s].len != len) continue;
        if (equal_members(slots_[s].member))
          throw std::invalid_argument("prefix source members are not sorted and distinct");
        return false;
      }
    }
    slots_.push_back({len, member, it->second});
    it->second = static_cast<std::int32_t>(slots_.size()) - 1;
    return true;
  }

 private:
  struct Slot {
    std::uint32_t len;
    std::uint32_t member;
    std::int32_t next;
  };
  std::unordered_map<std::uint64_t, std::int32_t> head_;
  std::vector<Slot> slots_;
};

inline bool source_is_injective(const PrefixSource& src, const HashParams& hp,
                                PrefixHashSet& set) {
  set.clear(src.count * 2 + 16);
  std::vector<Code> cur(src.len + 1, 0);
  std::vector<std::uint64_t> h(src.len + 1, 0);
  for (std::size_t j = 0; j < src.count; ++j) {
    std::size_t lcp = 0;
    if (j > 0)
      while (lcp < src.len && src.code_at(j, lcp + 1) == cur[lcp + 1]) ++lcp;
    if (j > 0 && lcp == src.len)
      throw std::invalid_argument("prefix source '" + src.name + "' contains duplicate members");
    for (std::size_t l = lcp + 1; l <= src.len; ++l) {
      cur[l] = src.code_at(j, l);
      h[l] = hp.extend(h[l - 1], cur[l], l);
      bool ok = set.insert(h[l], static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(j),
                           [&](std::uint32_t other) {
                             for (std::size_t t = 1; t <= l; ++t)
                               if (src.code_at(other, t) != cur[t]) return false;
                             return true;
                           });
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Draws random seeds until every source's distinct prefixes hash injectively
/// (each source checked independently). Gives up after `max_attempts` tries.
inline SeedResult find_injective_seed(const std::vector<PrefixSource>& sources,
                                      std::size_t pow_len, std::uint64_t rng_seed,
                                      int max_attempts = 32) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, HashParams::P - 2);
  detail::PrefixHashSet set;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    HashParams hp(dist(rng), pow_len);
    bool ok = true;
    for (const auto& src : sources)
      if (!detail::source_is_injective(src, hp, set)) {
        ok = false;
        break;
      }
    if (ok) return {std::move(hp), attempt};
  }
  throw SeedCollision("no injective hash seed found within " + std::to_string(max_attempts) +
                      " attempts");
}

}  // namespace ed1x
