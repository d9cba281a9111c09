#pragma once

#include <cstdint>
#include <vector>

#include "ed1x/core.hpp"
#include "ed1x/text.hpp"

namespace ed1x {

/// The distinct pad-extended length-b factors of the text: member k is the
/// b-prefix (padded with the 0 symbol) of the suffixes in suffix-array ranks
/// (count_prefix[k-1], count_prefix[k]]. Members are 1-based and sorted, and
/// their order coincides with suffix-array order.
struct FactorSet {
  std::uint32_t b = 0;
  std::vector<std::uint32_t> counts;        // per member, 1-based (slot 0 unused)
  std::vector<std::uint64_t> count_prefix;  // count_prefix[k] = counts[1] + .. + counts[k]
  std::vector<Pos> member_suffix;           // a text suffix start representing member k

  std::size_t member_count() const { return counts.empty() ? 0 : counts.size() - 1; }

  /// Maps a member range to the suffix-array rank range it covers.
  RankRange to_rank_range(RankRange members) const {
    if (members.empty()) return {};
    return {static_cast<Rank>(count_prefix[members.lo - 1] + 1),
            static_cast<Rank>(count_prefix[members.hi])};
  }

  /// 1-based code of member k at position t (0-padded past the text end).
  Code member_code(const TextCorpus& text, std::size_t k, std::size_t t) const {
    return text.at(member_suffix[k] + static_cast<Pos>(t) - 1);
  }
};

/// Groups suffix-array ranks by their first b symbols using the lcp array.
inline FactorSet build_factor_set(const IndexCore& core, const std::vector<std::uint32_t>& lcp,
                                  std::uint32_t b) {
  FactorSet fs;
  fs.b = b;
  fs.counts.assign(1, 0);
  fs.count_prefix.assign(1, 0);
  fs.member_suffix.assign(1, 0);
  const Pos n = core.n();
  for (Rank k = 1; k <= n; ++k) {
    if (k == 1 || lcp[k] < b) {
      fs.counts.push_back(1);
      fs.member_suffix.push_back(core.sa[k]);
    } else {
      fs.counts.back() += 1;
    }
  }
  for (std::size_t i = 1; i < fs.counts.size(); ++i)
    fs.count_prefix.push_back(fs.count_prefix[i - 1] + fs.counts[i]);
  return fs;
}

}  // namespace ed1x
