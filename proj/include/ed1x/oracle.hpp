#pragma once

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace ed1x {

/// True iff the edit distance between a and b is at most 1, decided by
/// scanning to the first mismatch and comparing the remainders directly.
inline bool edit_distance_at_most_one(std::string_view a, std::string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  if (b.size() - a.size() > 1) return false;
  std::size_t i = 0;
  while (i < a.size() && a[i] == b[i]) ++i;
  if (i == a.size()) return true;  // equal, or b = a + one char
  std::size_t skip_a = a.size() == b.size() ? i + 1 : i;  // substitution vs insertion
  return std::equal(a.begin() + skip_a, a.end(), b.begin() + i + 1, b.end());
}

/// All (start, length) substrings of text within edit distance 1 of q,
/// 1-based starts, sorted. Lengths are confined to {m-1, m, m+1} (any other
/// length has distance >= 2); the empty substring never matches.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> oracle_query(std::string_view text,
                                                                         std::string_view q) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  std::size_t n = text.size(), m = q.size();
  for (std::size_t len = m >= 2 ? m - 1 : 1; len <= m + 1 && len <= n; ++len)
    for (std::size_t j = 1; j + len - 1 <= n; ++j)
      if (edit_distance_at_most_one(text.substr(j - 1, len), q))
        out.emplace_back(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(len));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ed1x
