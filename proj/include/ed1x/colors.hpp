#pragma once

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ed1x/common.hpp"

namespace ed1x {

/// Reports the distinct colors of any subrange of a fixed color array in
/// O(1) range-minimum probes per distinct color, via the classic
/// previous-occurrence trick: position t is the first of its color in
/// [lo, hi] iff prev[t] < lo, and recursing around the argmin of prev finds
/// exactly those positions.
class ColorReporter {
 public:
  ColorReporter() = default;

  explicit ColorReporter(std::vector<std::uint32_t> colors) : colors_(std::move(colors)) {
    // colors_ is 1-based: slot 0 unused.
    std::size_t n = colors_.empty() ? 0 : colors_.size() - 1;
    prev_.assign(n + 1, 0);
    std::unordered_map<std::uint32_t, std::uint32_t> last;
    last.reserve(n * 2);
    for (std::size_t t = 1; t <= n; ++t) {
      auto [it, fresh] = last.try_emplace(colors_[t], 0);
      prev_[t] = it->second;
      it->second = static_cast<std::uint32_t>(t);
    }
    if (n > 0) {
      std::uint32_t levels = std::bit_width(n);
      table_.assign(levels, std::vector<std::uint32_t>(n + 1));
      for (std::size_t t = 1; t <= n; ++t) table_[0][t] = static_cast<std::uint32_t>(t);
      for (std::uint32_t k = 1; k < levels; ++k)
        for (std::size_t t = 1; t + (1u << k) - 1 <= n; ++t) {
          std::uint32_t a = table_[k - 1][t], b = table_[k - 1][t + (1u << (k - 1))];
          table_[k][t] = prev_[a] <= prev_[b] ? a : b;
        }
    }
  }

  std::size_t size() const { return colors_.empty() ? 0 : colors_.size() - 1; }
  std::uint32_t color_at(std::uint32_t t) const { return colors_[t]; }
  const std::vector<std::uint32_t>& colors() const { return colors_; }

  /// Position of the minimum prev in [lo, hi]; one probe.
  std::uint32_t argmin_prev(std::uint32_t lo, std::uint32_t hi, QueryStats* stats) const {
    if (stats) ++stats->color_probes;
    std::uint32_t k = std::bit_width(hi - lo + 1) - 1;
    std::uint32_t a = table_[k][lo], b = table_[k][hi - (1u << k) + 1];
    return prev_[a] <= prev_[b] ? a : b;
  }

  /// First position in [lo, hi] of a color (that of the overall argmin).
  std::uint32_t first_position(std::uint32_t lo, std::uint32_t hi, QueryStats* stats) const {
    return argmin_prev(lo, hi, stats);
  }

  /// Calls fn(position, color) once per distinct color in [lo, hi], at the
  /// color's first position in the range. fn returns false to stop early.
  /// Spends at most 2*distinct+1 range-minimum probes.
  template <class Fn>
  void report_distinct(std::uint32_t lo, std::uint32_t hi, QueryStats* stats, Fn fn) const {
    if (lo > hi || lo == 0) return;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> work{{lo, hi}};
    while (!work.empty()) {
      auto [l, r] = work.back();
      work.pop_back();
      if (l > r) continue;
      std::uint32_t t = argmin_prev(l, r, stats);
      if (prev_[t] >= lo) continue;  // every color in [l, r] already seen
      if (!fn(t, colors_[t])) return;
      if (t > l) work.push_back({l, t - 1});
      if (t < r) work.push_back({t + 1, r});
    }
  }

 private:
  std::vector<std::uint32_t> colors_;
  std::vector<std::uint32_t> prev_;
  std::vector<std::vector<std::uint32_t>> table_;
};

}  // namespace ed1x
