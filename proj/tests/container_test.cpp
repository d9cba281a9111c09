#include <gtest/gtest.h>

#include <random>
#include <string>

#include "ed1x/container.hpp"
#include "ed1x/oracle.hpp"

using namespace ed1x;

namespace {

std::string random_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
  std::string s(n, ' ');
  for (auto& ch : s) ch = static_cast<char>('a' + rng() % sigma);
  return s;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> spans(const std::vector<Occurrence>& occ) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& o : occ) out.emplace_back(o.start, o.len);
  return out;
}

/// Recomputes and replaces the trailing checksum (for crafting payload
/// corruptions that the structural checks, not the CRC, must catch).
std::string with_fixed_crc(std::string bytes) {
  std::uint64_t crc = detail::crc64(std::string_view(bytes).substr(0, bytes.size() - 8));
  for (int k = 0; k < 8; ++k)
    bytes[bytes.size() - 8 + k] = static_cast<char>((crc >> (8 * k)) & 0xFF);
  return bytes;
}

}  // namespace

TEST(Container, RoundTripPreservesBytesAndAnswers) {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 15; ++round) {
    std::string s = random_text(rng, 5 + rng() % 300, 1 + round % 5);
    Ed1xIndex ix =
        Ed1xIndex::build(s, {.b = static_cast<std::uint32_t>(4 + round % 20), .seed = rng()});
    std::string blob = serialize_index(ix);
    Ed1xIndex back = deserialize_index(blob);
    EXPECT_EQ(serialize_index(back), blob);
    EXPECT_EQ(back.seed_attempts, ix.seed_attempts);
    for (int qi = 0; qi < 5; ++qi) {
      std::string pat = random_text(rng, 1 + rng() % ix.opts.b, 2 + round % 5);
      EXPECT_EQ(spans(back.query_small(pat)), spans(ix.query_small(pat)));
      EXPECT_EQ(spans(back.query_large(pat)), spans(ix.query_large(pat)));
      EXPECT_EQ(spans(back.query_large(pat)), oracle_query(s, pat));
    }
  }
}

TEST(Container, DeterministicBytesForIdenticalInputs) {
  std::string s = "mississippi river runs";
  std::string a = serialize_index(Ed1xIndex::build(s, {.b = 12, .seed = 77}));
  std::string b = serialize_index(Ed1xIndex::build(s, {.b = 12, .seed = 77}));
  EXPECT_EQ(a, b);
  std::string c = serialize_index(Ed1xIndex::build(s, {.b = 12, .seed = 78}));
  EXPECT_EQ(a.size(), c.size());  // same shape, possibly different seed bytes
}

TEST(Container, EngineFlagsRoundTrip) {
  Ed1xIndex small_only =
      deserialize_index(serialize_index(Ed1xIndex::build(
          "banana", {.b = 8, .seed = 1, .small_engine = true, .large_engine = false})));
  EXPECT_FALSE(small_only.centroid.has_value());
  EXPECT_EQ(spans(small_only.query_small("nana")).size(), 6u);
  EXPECT_THROW(small_only.query_large("nana"), std::logic_error);

  Ed1xIndex large_only =
      deserialize_index(serialize_index(Ed1xIndex::build(
          "banana", {.b = 8, .seed = 1, .small_engine = false, .large_engine = true})));
  EXPECT_EQ(spans(large_only.query_large("nana")).size(), 6u);
  EXPECT_THROW(large_only.query_small("nana"), std::logic_error);
}

TEST(Container, ChecksumCatchesEveryFuzzedBitFlip) {
  Ed1xIndex ix = Ed1xIndex::build("the quick brown fox jumps over the lazy dog", {.b = 16});
  std::string blob = serialize_index(ix);
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    std::string bad = blob;
    std::size_t bit = rng() % (bad.size() * 8);
    bad[bit / 8] = static_cast<char>(bad[bit / 8] ^ (1 << (bit % 8)));
    EXPECT_THROW(deserialize_index(bad), CorruptContainer) << "bit " << bit;
  }
}

TEST(Container, RejectsTruncationAndHeaderDamage) {
  std::string blob = serialize_index(Ed1xIndex::build("abracadabra", {.b = 8}));
  for (std::size_t keep : {std::size_t{0}, std::size_t{4}, std::size_t{11},
                           blob.size() - 9, blob.size() - 1})
    EXPECT_THROW(deserialize_index(std::string_view(blob).substr(0, keep)), CorruptContainer);

  std::string bad_magic = blob;
  bad_magic[0] = 'X';
  EXPECT_THROW(deserialize_index(with_fixed_crc(bad_magic)), CorruptContainer);

  std::string bad_version = blob;
  bad_version[4] = 9;
  EXPECT_THROW(deserialize_index(with_fixed_crc(bad_version)), CorruptContainer);
}

TEST(Container, StructuralChecksCatchValidChecksumDamage) {
  std::string s = "abcabcaabbcc";
  Ed1xIndex ix = Ed1xIndex::build(s, {.b = 6});
  std::string blob = serialize_index(ix);
  // duplicate the first suffix-array entry over the second; the CRC is then
  // recomputed so only the permutation check can object
  std::size_t sa_off = 4 + 4 + 1 + 8 + 4 + 4 + 8 + 8 + 8 + 4  // header
                       + 4 + ix.text.sigma()                  // alphabet map
                       + 8 + ix.text.size()                   // text
                       + 8;                                   // sa length prefix
  std::string bad = blob;
  for (int k = 0; k < 4; ++k) bad[sa_off + 4 + k] = bad[sa_off + k];
  EXPECT_THROW(deserialize_index(with_fixed_crc(bad)), CorruptContainer);
}
