#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ed1x {

using Code = std::uint16_t;  // internal symbol: 0 = pad/terminator, 1..sigma = text symbols,
                             // sigma+1 = wildcard, >= sigma+2 = query-only symbols
using Pos = std::uint32_t;   // 1-based text position
using Rank = std::uint32_t;  // 1-based rank in a lexicographic array

inline constexpr Code kPad = 0;
inline constexpr std::uint32_t kInvalidIndex = 0xFFFFFFFFu;

struct PatternTooLong : std::invalid_argument {
  explicit PatternTooLong(std::size_t m, std::size_t b)
      : std::invalid_argument("pattern length " + std::to_string(m) +
                              " exceeds factor length bound b=" + std::to_string(b)) {}
};

struct CapacityExceeded : std::invalid_argument {
  explicit CapacityExceeded(const std::string& what) : std::invalid_argument(what) {}
};

struct CorruptContainer : std::runtime_error {
  explicit CorruptContainer(const std::string& what) : std::runtime_error(what) {}
};

struct SeedCollision : std::runtime_error {
  explicit SeedCollision(const std::string& what) : std::runtime_error(what) {}
};

/// Probe counters accumulated per query. "prep" covers the pattern
/// preprocessing stage (prefix/suffix range tables); everything else is
/// counted downstream of it.
struct QueryStats {
  std::uint64_t hash_probes = 0;   // hash-map lookups in prefix-search structures
  std::uint64_t array_probes = 0;  // rank/suffix-array/text cell reads while checking+reporting
  std::uint64_t prep_probes = 0;   // probes spent building per-pattern range tables
  std::uint64_t color_probes = 0;  // range-minimum probes while reporting distinct colors
  std::uint64_t wps_calls = 0;
  std::uint64_t wps_max_probes = 0;  // max hash probes used by a single prefix-search call

  std::uint64_t downstream_total() const { return hash_probes + array_probes + color_probes; }

  void merge(const QueryStats& o) {
    hash_probes += o.hash_probes;
    array_probes += o.array_probes;
    prep_probes += o.prep_probes;
    color_probes += o.color_probes;
    wps_calls += o.wps_calls;
    if (o.wps_max_probes > wps_max_probes) wps_max_probes = o.wps_max_probes;
  }
};

}  // namespace ed1x
