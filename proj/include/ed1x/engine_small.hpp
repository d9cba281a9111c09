#pragma once

#include <string_view>
#include <vector>

#include "ed1x/matcher.hpp"

namespace ed1x {

/// Answers a one-error query by exhaustively enumerating every single-edit
/// variant of the pattern over the text alphabet and looking each one up.
/// Candidate order is fixed: the exact pattern, then deletions by position,
/// then substitutions by (position, symbol), then insertions likewise; an
/// insertion that re-creates the following symbol is skipped so runs of
/// equal symbols are tried at their rightmost slot only.
inline std::vector<Occurrence> query_one_error_small(const QueryEnv& env,
                                                     std::string_view pattern,
                                                     QueryStats* stats = nullptr) {
  PatternState st = prepare_pattern(env, pattern, stats);
  const std::size_t m = st.m;
  const Code sigma = static_cast<Code>(env.text->sigma());
  using K = EditDescriptor::Kind;

  OccurrenceCollector acc;
  std::vector<Occurrence> batch;
  auto run = [&](EditDescriptor e) {
    batch.clear();
    query_modified_pattern(env, st, e, &batch);
    acc.add(batch);
  };

  run({K::Exact, 0, 0});
  if (m >= 2)
    for (std::uint32_t i = 1; i <= m; ++i) run({K::Deletion, i, 0});
  for (std::uint32_t i = 1; i <= m; ++i)
    for (Code c = 1; c <= sigma; ++c)
      if (c != st.q[i]) run({K::Substitution, i, c});
  for (std::uint32_t i = 1; i <= m + 1; ++i)
    for (Code c = 1; c <= sigma; ++c)
      if (i > m || c != st.q[i]) run({K::Insertion, i, c});
  return acc.sorted();
}

}  // namespace ed1x
