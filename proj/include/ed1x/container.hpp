#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "ed1x/index.hpp"

namespace ed1x {

namespace detail {

/// CRC-64/XZ (reflected polynomial 0xC96C5795D7870F42).
inline const std::array<std::uint64_t, 256>& crc64_table() {
  static const std::array<std::uint64_t, 256> table = [] {
    std::array<std::uint64_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint64_t c = i;
      for (int k = 0; k < 8; ++k) c = (c >> 1) ^ ((c & 1) ? 0xC96C5795D7870F42ull : 0);
      t[i] = c;
    }
    return t;
  }();
  return table;
}

inline std::uint64_t crc64(std::string_view data) {
  const auto& t = crc64_table();
  std::uint64_t c = ~0ull;
  for (unsigned char ch : data) c = t[(c ^ ch) & 0xFF] ^ (c >> 8);
  return ~c;
}

class ByteWriter {
 public:
  void put_u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void put_u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) buf_.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
  }
  void put_u64(std::uint64_t v) {
    for (int k = 0; k < 8; ++k) buf_.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
  }
  void put_bytes(std::string_view s) { buf_.append(s); }
  const std::string& bytes() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint8_t get_u8() { return static_cast<std::uint8_t>(raw(1)[0]); }
  std::uint32_t get_u32() {
    const char* p = raw(4);
    std::uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(p[k]);
    return v;
  }
  std::uint64_t get_u64() {
    const char* p = raw(8);
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(p[k]);
    return v;
  }
  std::string_view get_bytes(std::size_t n) { return {raw(n), n}; }
  bool done() const { return off_ == data_.size(); }

 private:
  const char* raw(std::size_t n) {
    if (data_.size() - off_ < n) throw CorruptContainer("container truncated");
    const char* p = data_.data() + off_;
    off_ += n;
    return p;
  }

  std::string_view data_;
  std::size_t off_ = 0;
};

inline void save_wps(ByteWriter& w, const WeakPrefixIndex& wps) {
  w.put_u32(wps.member_count());
  w.put_u32(wps.member_len());
  w.put_u32(wps.root_extent());
  w.put_u32(static_cast<std::uint32_t>(wps.nodes().size()));
  for (const auto& nd : wps.nodes()) {
    w.put_u32(nd.lo);
    w.put_u32(nd.hi);
    w.put_u32(nd.extent);
  }
  auto keys = wps.keys_sorted();
  w.put_u32(static_cast<std::uint32_t>(keys.size()));
  for (const auto& k : keys) {
    w.put_u32(k.len);
    w.put_u64(k.hash);
    w.put_u32(k.node);
  }
}

inline WeakPrefixIndex load_wps(ByteReader& r) {
  std::uint32_t count = r.get_u32();
  std::uint32_t len = r.get_u32();
  std::uint32_t root_extent = r.get_u32();
  std::uint32_t node_count = r.get_u32();
  std::vector<WeakPrefixIndex::Node> nodes(node_count);
  for (auto& nd : nodes) {
    nd.lo = r.get_u32();
    nd.hi = r.get_u32();
    nd.extent = r.get_u32();
  }
  std::uint32_t key_count = r.get_u32();
  std::vector<WeakPrefixIndex::Key> keys(key_count);
  for (auto& k : keys) {
    k.len = r.get_u32();
    k.hash = r.get_u64();
    k.node = r.get_u32();
    if (k.node >= node_count) throw CorruptContainer("prefix-search key references no node");
  }
  try {
    return WeakPrefixIndex::from_parts(count, len, root_extent, std::move(nodes), keys);
  } catch (const SeedCollision&) {
    throw CorruptContainer("prefix-search keys are inconsistent");
  }
}

inline void require(bool ok, const char* what) {
  if (!ok) throw CorruptContainer(what);
}

}  // namespace detail

inline constexpr char kContainerMagic[4] = {'E', 'D', '1', 'X'};
inline constexpr std::uint32_t kContainerVersion = 1;

/// Serializes a built index: magic, little-endian fixed-width header fields,
/// length-prefixed sections, and a trailing CRC-64 of all preceding bytes.
/// Identical build inputs yield identical bytes.
inline std::string serialize_index(const Ed1xIndex& ix) {
  detail::ByteWriter w;
  w.put_bytes({kContainerMagic, 4});
  w.put_u32(kContainerVersion);
  std::uint8_t flags = (ix.opts.small_engine ? 1 : 0) | (ix.centroid ? 2 : 0);
  w.put_u8(flags);
  w.put_u64(ix.text.size());
  w.put_u32(ix.text.sigma());
  w.put_u32(ix.opts.b);
  w.put_u64(HashParams::P);
  w.put_u64(ix.hp.r);
  w.put_u64(ix.opts.seed);
  w.put_u32(static_cast<std::uint32_t>(ix.seed_attempts));

  w.put_u32(ix.text.sigma());
  for (Code c = 1; c <= static_cast<Code>(ix.text.sigma()); ++c)
    w.put_u8(static_cast<std::uint8_t>(ix.text.decode(c)));
  w.put_u64(ix.text.size());
  w.put_bytes(ix.text.bytes());

  const Pos n = ix.text.size();
  w.put_u64(n);
  for (Pos i = 1; i <= n; ++i) w.put_u32(ix.core.sa[i]);
  w.put_u64(n);
  for (Pos i = 1; i <= n; ++i) w.put_u32(ix.core.rsa[i]);

  detail::save_wps(w, ix.factor_wps);

  if (ix.centroid) {
    w.put_u32(static_cast<std::uint32_t>(ix.centroid->trees.size()));
    for (const CorrectionTree& tree : ix.centroid->trees) {
      w.put_u32(tree.path);
      w.put_u8(static_cast<std::uint8_t>(tree.kind));
      w.put_u32(static_cast<std::uint32_t>(tree.counts.size() - 1));
      for (std::size_t k = 1; k < tree.counts.size(); ++k) w.put_u32(tree.counts[k]);
      const auto& colors = tree.reporter.colors();
      w.put_u64(tree.reporter.size());
      for (std::size_t t = 1; t < colors.size(); ++t) w.put_u32(colors[t]);
      detail::save_wps(w, tree.wps);
    }
  }

  std::uint64_t crc = detail::crc64(w.bytes());
  w.put_u64(crc);
  return w.take();
}

/// Parses and validates a container, rebuilding the derived structures
/// (inverse arrays, lcp, factor set, suffix tree, decomposition, color
/// reporters) that the format deliberately omits. Throws CorruptContainer
/// on any checksum, structural, or consistency failure.
inline Ed1xIndex deserialize_index(std::string_view bytes) {
  using detail::require;
  require(bytes.size() >= 12, "container shorter than its fixed header");
  std::uint64_t stored_crc = 0;
  for (int k = 7; k >= 0; --k)
    stored_crc = (stored_crc << 8) | static_cast<unsigned char>(bytes[bytes.size() - 8 + k]);
  require(detail::crc64(bytes.substr(0, bytes.size() - 8)) == stored_crc,
          "container checksum mismatch");

  detail::ByteReader r(bytes.substr(0, bytes.size() - 8));
  require(r.get_bytes(4) == std::string_view{kContainerMagic, 4}, "bad container magic");
  require(r.get_u32() == kContainerVersion, "unsupported container version");
  std::uint8_t flags = r.get_u8();
  require((flags & ~3u) == 0 && (flags & 3u) != 0, "bad engine flags");
  std::uint64_t n64 = r.get_u64();
  std::uint32_t sigma = r.get_u32();
  std::uint32_t b = r.get_u32();
  require(r.get_u64() == HashParams::P, "unsupported hash modulus");
  std::uint64_t seed_r = r.get_u64();
  std::uint64_t seed = r.get_u64();
  std::uint32_t attempts = r.get_u32();
  require(n64 >= 1 && b >= 1, "empty text or zero pattern bound");

  std::uint32_t alpha_count = r.get_u32();
  require(alpha_count == sigma, "alphabet map length mismatch");
  std::string_view alpha = r.get_bytes(sigma);
  std::uint64_t text_len = r.get_u64();
  require(text_len == n64, "text length mismatch");
  std::string text_bytes{r.get_bytes(text_len)};

  Ed1xIndex ix;
  ix.opts = {b, seed, (flags & 1) != 0, (flags & 2) != 0};
  ix.text = TextCorpus(std::move(text_bytes));
  require(ix.text.sigma() == sigma, "alphabet size disagrees with the text");
  for (Code c = 1; c <= static_cast<Code>(sigma); ++c)
    require(static_cast<unsigned char>(alpha[c - 1]) == ix.text.decode(c),
            "alphabet map disagrees with the text");

  const Pos n = ix.text.size();
  auto load_perm = [&](const char* what) {
    require(r.get_u64() == n64, what);
    std::vector<Pos> perm(n + 1, 0);
    std::vector<bool> seen(n + 1, false);
    for (Pos i = 1; i <= n; ++i) {
      Pos v = r.get_u32();
      require(v >= 1 && v <= n && !seen[v], what);
      seen[v] = true;
      perm[i] = v;
    }
    return perm;
  };
  ix.core.sa = load_perm("suffix array is not a permutation");
  ix.core.rsa = load_perm("reverse suffix array is not a permutation");
  ix.core.isa = invert_suffix_array(ix.core.sa);
  ix.core.risa = invert_suffix_array(ix.core.rsa);

  ix.lcp = build_lcp(n, [&](Pos i) { return ix.text.at(i); }, ix.core.sa, ix.core.isa);
  ix.factors = build_factor_set(ix.core, ix.lcp, b);
  ix.hp = HashParams(seed_r, b + 3);
  ix.seed_attempts = static_cast<int>(attempts);

  ix.factor_wps = detail::load_wps(r);
  require(ix.factor_wps.member_count() == ix.factors.member_count() &&
              ix.factor_wps.member_len() == b,
          "factor prefix search disagrees with the factor set");

  if (ix.opts.large_engine) {
    CentroidIndex ci;
    ci.st = SuffixTree::build(ix.text, ix.core, ix.lcp);
    ci.decomp = decompose_by_heavy_leaf(ix.text, ix.core, ci.st);
    ci.tree_of.assign(ci.decomp.path_count(), {kInvalidIndex, kInvalidIndex, kInvalidIndex});
    std::uint32_t tree_count = r.get_u32();
    for (std::uint32_t ti = 0; ti < tree_count; ++ti) {
      CorrectionTree tree;
      tree.path = r.get_u32();
      std::uint8_t kind = r.get_u8();
      require(tree.path < ci.decomp.path_count() && kind < kTreeKinds,
              "correction tree addresses no path");
      tree.kind = static_cast<TreeKind>(kind);
      std::uint32_t groups = r.get_u32();
      tree.counts.assign(1, 0);
      tree.count_prefix.assign(1, 0);
      for (std::uint32_t g = 0; g < groups; ++g) {
        std::uint32_t c = r.get_u32();
        require(c >= 1, "empty correction group");
        tree.counts.push_back(c);
        tree.count_prefix.push_back(tree.count_prefix.back() + c);
      }
      std::uint64_t entries = r.get_u64();
      require(entries == tree.count_prefix.back(), "correction colors disagree with groups");
      std::vector<std::uint32_t> colors(entries + 1, 0);
      for (std::uint64_t t = 1; t <= entries; ++t) colors[t] = r.get_u32();
      tree.reporter = ColorReporter(std::move(colors));
      tree.wps = detail::load_wps(r);
      require(tree.wps.member_count() == groups && tree.wps.member_len() == b,
              "correction prefix search disagrees with its groups");
      auto& slot = ci.tree_of[tree.path][kind];
      require(slot == kInvalidIndex, "duplicate correction tree");
      slot = static_cast<std::uint32_t>(ci.trees.size());
      ci.trees.push_back(std::move(tree));
    }
    ix.centroid = std::move(ci);
  }
  require(r.done(), "trailing bytes after the last section");
  return ix;
}

}  // namespace ed1x
