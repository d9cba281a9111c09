#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ed1x/engine_large.hpp"
#include "ed1x/engine_small.hpp"
#include "ed1x/matcher.hpp"
#include "ed1x/seed.hpp"

namespace ed1x {

struct BuildOptions {
  std::uint32_t b = 64;           // factor length bound (maximum pattern length)
  std::uint64_t seed = 20250614;  // rng seed for the injective hash search
  bool small_engine = true;       // enumeration engine (factor index only)
  bool large_engine = true;       // centroid-path engine (adds correction trees)
};

/// The assembled index: text, rank arrays, the factor set with its weak
/// prefix search, and optionally the centroid-path machinery.
struct Ed1xIndex {
  BuildOptions opts;
  TextCorpus text;
  IndexCore core;
  std::vector<Pos> lcp;
  FactorSet factors;
  HashParams hp;
  int seed_attempts = 0;
  WeakPrefixIndex factor_wps;
  std::optional<CentroidIndex> centroid;

  QueryEnv env() const { return {&text, &core, &factors, &factor_wps, &hp, opts.b}; }

  std::vector<Occurrence> query_small(std::string_view pattern,
                                      QueryStats* stats = nullptr) const {
    if (!opts.small_engine) throw std::logic_error("index was built without the small engine");
    return query_one_error_small(env(), pattern, stats);
  }

  std::vector<Occurrence> query_large(std::string_view pattern,
                                      QueryStats* stats = nullptr) const {
    if (!centroid) throw std::logic_error("index was built without the large engine");
    return query_one_error_large(env(), *centroid, pattern, stats);
  }

  static Ed1xIndex build(std::string text_bytes, const BuildOptions& opt) {
    Ed1xIndex ix;
    ix.opts = opt;
    if (opt.b < 1) throw std::invalid_argument("factor length bound b must be at least 1");
    ix.text = TextCorpus(std::move(text_bytes));
    check_hash_capacity(ix.text.size(), ix.text.sigma());
    ix.core = build_index_core(ix.text);
    ix.lcp = build_lcp(ix.text.size(), [&](Pos i) { return ix.text.at(i); }, ix.core.sa,
                       ix.core.isa);
    ix.factors = build_factor_set(ix.core, ix.lcp, opt.b);

    std::vector<RawCorrectionTree> raws;
    SuffixTree st;
    CentroidDecomposition decomp;
    if (opt.large_engine) {
      st = SuffixTree::build(ix.text, ix.core, ix.lcp);
      decomp = decompose_by_heavy_leaf(ix.text, ix.core, st);
      for (std::uint32_t path = 0; path < decomp.path_count(); ++path)
        for (TreeKind kind : {TreeKind::Sub1, TreeKind::Sub2, TreeKind::Del1}) {
          RawCorrectionTree raw =
              build_raw_correction_tree(ix.text, ix.core, st, decomp, opt.b, path, kind);
          if (!raw.entries.empty()) raws.push_back(std::move(raw));
        }
    }

    std::vector<PrefixSource> sources;
    sources.push_back({"factors", ix.factors.member_count(), opt.b,
                       [&ix](std::size_t j, std::size_t t) {
                         return ix.factors.member_code(ix.text, j + 1, t);
                       }});
    for (std::size_t r = 0; r < raws.size(); ++r)
      sources.push_back({"tree" + std::to_string(r), raws[r].member_count(), opt.b,
                         [&ix, &raws, r](std::size_t j, std::size_t t) {
                           return raws[r].member_code(ix.text, j + 1, t);
                         }});
    SeedResult sr = find_injective_seed(sources, opt.b + 3, opt.seed);
    ix.hp = std::move(sr.params);
    ix.seed_attempts = sr.attempts;

    ix.factor_wps = WeakPrefixIndex::build(
        ix.factors.member_count(), opt.b,
        [&](std::size_t k, std::size_t t) { return ix.factors.member_code(ix.text, k, t); },
        ix.hp);

    if (opt.large_engine) {
      CentroidIndex ci;
      ci.st = std::move(st);
      ci.decomp = std::move(decomp);
      ci.tree_of.assign(ci.decomp.path_count(),
                        {kInvalidIndex, kInvalidIndex, kInvalidIndex});
      for (auto& raw : raws) {
        std::uint32_t path = raw.path;
        TreeKind kind = raw.kind;
        ci.tree_of[path][static_cast<std::uint32_t>(kind)] =
            static_cast<std::uint32_t>(ci.trees.size());
        ci.trees.push_back(finalize_correction_tree(ix.text, std::move(raw), opt.b, ix.hp));
      }
      ix.centroid = std::move(ci);
    }
    return ix;
  }
};

}  // namespace ed1x
