#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "ed1x/engine_small.hpp"
#include "ed1x/oracle.hpp"
#include "ed1x/seed.hpp"

using namespace ed1x;

namespace {

std::string random_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
  std::string s(n, ' ');
  for (auto& ch : s) ch = static_cast<char>('a' + rng() % sigma);
  return s;
}

struct SmallFixture {
  TextCorpus text;
  IndexCore core;
  FactorSet fs;
  HashParams hp;
  WeakPrefixIndex wps;

  SmallFixture(const std::string& s, std::uint32_t b, std::uint64_t seed = 1)
      : text(s) {
    check_hash_capacity(text.size(), text.sigma());
    core = build_index_core(text);
    auto lcp = build_lcp(text.size(), [&](Pos i) { return text.at(i); }, core.sa, core.isa);
    fs = build_factor_set(core, lcp, b);
    PrefixSource src{"factors", fs.member_count(), b,
                     [this](std::size_t j, std::size_t t) {
                       return fs.member_code(text, j + 1, t);
                     }};
    hp = find_injective_seed({src}, b + 3, seed).params;
    wps = WeakPrefixIndex::build(
        fs.member_count(), b,
        [&](std::size_t k, std::size_t t) { return fs.member_code(text, k, t); }, hp);
    env_ = QueryEnv{&text, &core, &fs, &wps, &hp, b};
  }

  const QueryEnv& env() const { return env_; }

 private:
  QueryEnv env_;
};

std::vector<std::pair<std::uint32_t, std::uint32_t>> spans(const std::vector<Occurrence>& occ) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& o : occ) out.emplace_back(o.start, o.len);
  return out;
}

// Every reported edit, applied to the query, must reproduce the text window.
void check_edit_consistency(const SmallFixture& fx, const std::string& pattern,
                            const std::vector<Occurrence>& occ) {
  auto q = fx.text.encode(pattern);
  for (const auto& o : occ) {
    auto p = apply_edit(q, pattern.size(), o.edit);
    ASSERT_EQ(p.size() - 1, o.len);
    for (std::uint32_t t = 1; t <= o.len; ++t)
      ASSERT_EQ(fx.text.at(o.start + t - 1), p[t])
          << "pattern " << pattern << " at " << o.start << " len " << o.len;
  }
}

}  // namespace

TEST(SmallEngine, BananaWorkedExample) {
  SmallFixture fx("banana", 64);
  QueryStats st;
  auto occ = query_one_error_small(fx.env(), "nana", &st);
  EXPECT_EQ(spans(occ), (std::vector<std::pair<std::uint32_t, std::uint32_t>>{
                            {1, 4}, {2, 3}, {2, 5}, {3, 3}, {3, 4}, {4, 3}}));
  // the exact window is attributed to the unedited pattern
  EXPECT_EQ(occ[4].edit.kind, EditDescriptor::Kind::Exact);
  EXPECT_GT(st.downstream_total(), 0u);
  EXPECT_GT(st.prep_probes, 0u);
  check_edit_consistency(fx, "nana", occ);
}

TEST(SmallEngine, RejectsBadPatterns) {
  SmallFixture fx("banana", 4);
  EXPECT_THROW(query_one_error_small(fx.env(), ""), std::invalid_argument);
  EXPECT_THROW(query_one_error_small(fx.env(), "nanan"), PatternTooLong);
}

TEST(SmallEngine, SingleLetterQueries) {
  SmallFixture fx("abacabadab", 8);
  auto occ = query_one_error_small(fx.env(), "d");
  EXPECT_EQ(spans(occ), oracle_query("abacabadab", "d"));
  check_edit_consistency(fx, "d", occ);
}

TEST(SmallEngine, PatternAtFactorBoundUsesFallback) {
  // m == b makes every insertion one symbol longer than the factor index
  // covers, exercising the direct suffix-array fallback.
  SmallFixture fx("abracadabra", 4);
  for (const char* pat : {"abra", "brac", "dab", "raca", "aaaa", "abr"}) {
    auto occ = query_one_error_small(fx.env(), pat);
    EXPECT_EQ(spans(occ), oracle_query("abracadabra", pat)) << pat;
    check_edit_consistency(fx, pat, occ);
  }
}

TEST(SmallEngine, AbsentBytesOnlyMatchByEdit) {
  SmallFixture fx("mississippi", 16);
  auto occ = query_one_error_small(fx.env(), "zss");
  EXPECT_EQ(spans(occ), oracle_query("mississippi", "zss"));
  auto occ2 = query_one_error_small(fx.env(), "zz");
  EXPECT_TRUE(occ2.empty());
}

TEST(SmallEngine, RandomizedOracleEquivalence) {
  std::mt19937_64 rng(31);
  const unsigned sigmas[] = {1, 2, 4, 8, 26};
  for (int round = 0; round < 120; ++round) {
    unsigned sigma = sigmas[round % 5];
    std::size_t n = 1 + rng() % 250;
    std::uint32_t b = 3 + rng() % 14;
    std::string s = random_text(rng, n, sigma);
    SmallFixture fx(s, b, rng());
    for (int qi = 0; qi < 8; ++qi) {
      std::size_t m = 1 + rng() % b;
      std::string pat;
      if (qi % 2 == 0 && n > m) {  // sample from the text, then mutate a bit
        std::size_t at = rng() % (n - m);
        pat = s.substr(at, m);
        if (qi % 4 == 0 && !pat.empty())
          pat[rng() % pat.size()] = static_cast<char>('a' + rng() % (sigma + 1));
      } else {
        pat = random_text(rng, m, sigma + 1);
      }
      QueryStats st;
      auto occ = query_one_error_small(fx.env(), pat, &st);
      ASSERT_EQ(spans(occ), oracle_query(s, pat)) << "text=" << s << " q=" << pat;
      check_edit_consistency(fx, pat, occ);
    }
  }
}
