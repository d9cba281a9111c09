#pragma once

#include <cstdint>
#include <vector>

#include "ed1x/common.hpp"

namespace ed1x {

/// Polynomial hashing modulo the Mersenne prime 2^61-1:
///   H(x) = sum_{i=1..|x|} x[i] * r^i  (mod P)
/// The empty string hashes to 0. Suffix hashes are taken standalone, i.e.
/// H(q[i..m]) restarts its exponents at r^1; all edited-pattern formulas
/// below assume that convention.
struct HashParams {
  static constexpr std::uint64_t P = (1ull << 61) - 1;

  std::uint64_t r = 0;
  std::vector<std::uint64_t> pow;  // pow[i] = r^i mod P

  HashParams() = default;
  HashParams(std::uint64_t seed_r, std::size_t max_len) : r(seed_r % P) {
    pow.resize(max_len + 1);
    pow[0] = 1;
    for (std::size_t i = 1; i <= max_len; ++i) pow[i] = mul(pow[i - 1], r);
  }

  static std::uint64_t reduce(unsigned __int128 x) {
    std::uint64_t s = static_cast<std::uint64_t>(x & P) + static_cast<std::uint64_t>(x >> 61);
    if (s >= P) s -= P;
    return s;
  }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    return reduce(static_cast<unsigned __int128>(a) * b);
  }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s >= P) s -= P;
    return s;
  }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + P - b; }

  /// H(prefix + c) from H(prefix) where |prefix| = len.
  std::uint64_t extend(std::uint64_t h, Code c, std::size_t len_with_c) const {
    return add(h, mul(c, pow[len_with_c]));
  }
};

/// The hash capacity precondition: P must exceed n^3 * (sigma+2).
inline void check_hash_capacity(std::uint64_t n, std::uint64_t sigma) {
  unsigned __int128 need = static_cast<unsigned __int128>(n) * n * n * (sigma + 2);
  if (need >= HashParams::P)
    throw CapacityExceeded("text size " + std::to_string(n) + " with alphabet " +
                           std::to_string(sigma) + " exceeds the 2^61-1 hash capacity bound");
}

/// 1-based code accessor form.
template <class CodeAt>
std::uint64_t hash_string(const HashParams& hp, CodeAt code_at, std::size_t len) {
  std::uint64_t h = 0;
  for (std::size_t i = len; i >= 1; --i) h = HashParams::mul(HashParams::add(h, code_at(i)), hp.r);
  return h;
}

inline std::uint64_t hash_string(const HashParams& hp, const std::vector<Code>& q,
                                 std::size_t len) {
  return hash_string(hp, [&](std::size_t i) { return q[i]; }, len);
}

/// A single edit applied to the query pattern q.
struct EditDescriptor {
  enum class Kind : std::uint8_t { Exact, Deletion, Substitution, Insertion };
  Kind kind = Kind::Exact;
  std::uint32_t pos = 0;  // 1-based position in q; Insertion inserts before pos (1..m+1)
  Code ch = 0;            // substituted / inserted code

  friend bool operator==(const EditDescriptor&, const EditDescriptor&) = default;
};

inline std::size_t edited_length(const EditDescriptor& e, std::size_t m) {
  switch (e.kind) {
    case EditDescriptor::Kind::Deletion: return m - 1;
    case EditDescriptor::Kind::Insertion: return m + 1;
    default: return m;
  }
}

/// Per-pattern hash tables enabling O(1) hashes of any single-edit variant
/// of q and of any prefix of such a variant.
///   pre[j] = H(q[1..j]);  suf[i] = H(q[i..m]) standalone;  suf[m+1] = 0.
struct QueryHashes {
  const HashParams* hp = nullptr;
  std::size_t m = 0;
  std::vector<std::uint64_t> pre, suf;
};

inline QueryHashes precompute_query_hashes(const HashParams& hp, const std::vector<Code>& q,
                                           std::size_t m) {
  QueryHashes qh;
  qh.hp = &hp;
  qh.m = m;
  qh.pre.assign(m + 1, 0);
  qh.suf.assign(m + 2, 0);
  for (std::size_t j = 1; j <= m; ++j) qh.pre[j] = hp.extend(qh.pre[j - 1], q[j], j);
  for (std::size_t i = m; i >= 1; --i)
    qh.suf[i] = HashParams::mul(HashParams::add(qh.suf[i + 1], q[i]), hp.r);
  return qh;
}

/// H(p) where p = q with the edit applied.
inline std::uint64_t hash_edited(const QueryHashes& qh, const EditDescriptor& e) {
  using K = EditDescriptor::Kind;
  const auto& pw = qh.hp->pow;
  std::uint64_t i = e.pos;
  switch (e.kind) {
    case K::Exact: return qh.pre[qh.m];
    case K::Deletion:
      return HashParams::add(qh.pre[i - 1], HashParams::mul(qh.suf[i + 1], pw[i - 1]));
    case K::Substitution:
      return HashParams::add(qh.pre[i - 1],
                             HashParams::mul(HashParams::add(e.ch, qh.suf[i + 1]), pw[i]));
    case K::Insertion:
      return HashParams::add(qh.pre[i - 1],
                             HashParams::mul(HashParams::add(e.ch, qh.suf[i]), pw[i]));
  }
  return 0;
}

/// H(p[1..j]) for the edited pattern p, 0 <= j <= |p|.
inline std::uint64_t hash_edited_prefix(const QueryHashes& qh, const EditDescriptor& e,
                                        std::size_t j) {
  using K = EditDescriptor::Kind;
  const auto& pw = qh.hp->pow;
  std::uint64_t i = e.pos;
  if (e.kind == K::Exact || j < i) return qh.pre[j];
  std::uint64_t full = hash_edited(qh, e);
  switch (e.kind) {
    case K::Deletion:  // tail q[j+2..m] sits at positions j+1.. of p
      return HashParams::sub(full, HashParams::mul(qh.suf[j + 2], pw[j]));
    case K::Substitution:  // tail q[j+1..m] keeps its positions
      return HashParams::sub(full, HashParams::mul(qh.suf[j + 1], pw[j]));
    case K::Insertion:  // tail q[j..m] sits at positions j+1.. of p
      return HashParams::sub(full, HashParams::mul(qh.suf[j], pw[j]));
    default: return full;
  }
}

}  // namespace ed1x
