#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "ed1x/hashing.hpp"

using namespace ed1x;

namespace {

std::vector<Code> apply_edit(const std::vector<Code>& q, std::size_t m,
                             const EditDescriptor& e) {
  std::vector<Code> p(1, kPad);
  using K = EditDescriptor::Kind;
  for (std::size_t i = 1; i <= m; ++i) {
    if (e.kind == K::Insertion && i == e.pos) p.push_back(e.ch);
    if (e.kind == K::Deletion && i == e.pos) continue;
    if (e.kind == K::Substitution && i == e.pos)
      p.push_back(e.ch);
    else
      p.push_back(q[i]);
  }
  if (e.kind == K::Insertion && e.pos == m + 1) p.push_back(e.ch);
  return p;
}

}  // namespace

TEST(Hashing, PositionWeightedConvention) {
  // H(x) = sum x[i] * r^i. For r=10 and x=(1,2): 1*10 + 2*100 = 210, which
  // reduces to 8 modulo a small prime like 101.
  HashParams hp(10, 8);
  std::vector<Code> x = {kPad, 1, 2};
  EXPECT_EQ(hash_string(hp, x, 2), 210u);
  EXPECT_EQ(210 % 101, 8);
  EXPECT_EQ(hash_string(hp, x, 0), 0u);
}

TEST(Hashing, ModularOpsMatchWideArithmetic) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20000; ++i) {
    std::uint64_t a = rng() % HashParams::P, b = rng() % HashParams::P;
    EXPECT_EQ(HashParams::mul(a, b),
              static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % HashParams::P));
    EXPECT_EQ(HashParams::add(a, b),
              static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) + b) % HashParams::P));
    EXPECT_EQ(HashParams::sub(a, b),
              static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) + HashParams::P - b) %
                                         HashParams::P));
  }
}

TEST(Hashing, ExtendMatchesFullRecompute) {
  std::mt19937_64 rng(2);
  HashParams hp(rng() % HashParams::P, 64);
  std::vector<Code> x(65, 0);
  std::uint64_t h = 0;
  for (std::size_t l = 1; l <= 64; ++l) {
    x[l] = static_cast<Code>(1 + rng() % 1000);
    h = hp.extend(h, x[l], l);
    EXPECT_EQ(h, hash_string(hp, x, l));
  }
}

TEST(Hashing, CapacityBound) {
  EXPECT_NO_THROW(check_hash_capacity(1u << 16, 256));
  EXPECT_NO_THROW(check_hash_capacity(1u << 19, 4));
  EXPECT_THROW(check_hash_capacity(210000, 256), CapacityExceeded);
  EXPECT_THROW(check_hash_capacity(3000000, 2), CapacityExceeded);
}

TEST(Hashing, PrefixAndSuffixTables) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    std::size_t m = 1 + rng() % 40;
    HashParams hp(2 + rng() % (HashParams::P - 3), m + 3);
    std::vector<Code> q(m + 1, 0);
    for (std::size_t i = 1; i <= m; ++i) q[i] = static_cast<Code>(1 + rng() % 300);
    QueryHashes qh = precompute_query_hashes(hp, q, m);
    for (std::size_t j = 0; j <= m; ++j) EXPECT_EQ(qh.pre[j], hash_string(hp, q, j));
    for (std::size_t i = 1; i <= m + 1; ++i) {
      std::uint64_t want = hash_string(hp, [&](std::size_t t) { return q[i + t - 1]; },
                                       m - i + 1);
      EXPECT_EQ(qh.suf[i], want);
    }
  }
}

// Single-edit variants hash identically whether derived by the O(1) pre/suf
// formulas or by rehashing the materialized string, for the full hash and
// for every prefix length.
TEST(Hashing, EditedHashesMatchMaterialized) {
  std::mt19937_64 rng(4);
  int cases = 0;
  while (cases < 10000) {
    std::size_t m = 1 + rng() % 24;
    HashParams hp(2 + rng() % (HashParams::P - 3), m + 3);
    std::vector<Code> q(m + 1, 0);
    for (std::size_t i = 1; i <= m; ++i) q[i] = static_cast<Code>(1 + rng() % 50);
    QueryHashes qh = precompute_query_hashes(hp, q, m);

    std::vector<EditDescriptor> edits;
    edits.push_back({EditDescriptor::Kind::Exact, 0, 0});
    using K = EditDescriptor::Kind;
    for (std::uint32_t i = 1; i <= m && m >= 2; ++i) edits.push_back({K::Deletion, i, 0});
    for (std::uint32_t i = 1; i <= m; ++i)
      edits.push_back({K::Substitution, i, static_cast<Code>(1 + rng() % 50)});
    for (std::uint32_t i = 1; i <= m + 1; ++i)
      edits.push_back({K::Insertion, i, static_cast<Code>(1 + rng() % 50)});

    for (const auto& e : edits) {
      auto p = apply_edit(q, m, e);
      std::size_t plen = edited_length(e, m);
      ASSERT_EQ(p.size() - 1, plen);
      EXPECT_EQ(hash_edited(qh, e), hash_string(hp, p, plen)) << "kind "
                                                              << static_cast<int>(e.kind);
      for (std::size_t j = 0; j <= plen; ++j)
        ASSERT_EQ(hash_edited_prefix(qh, e, j), hash_string(hp, p, j))
            << "kind " << static_cast<int>(e.kind) << " pos " << e.pos << " j " << j;
      ++cases;
    }
  }
}
