#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ed1x/common.hpp"

namespace ed1x {

/// A text held as raw bytes plus an order-preserving remap onto the dense
/// code range 1..sigma. Code 0 stays reserved for padding/terminator and
/// sigma+1 for the wildcard, so every structure can treat codes uniformly.
class TextCorpus {
 public:
  TextCorpus() = default;

  explicit TextCorpus(std::string bytes) : bytes_(std::move(bytes)) {
    if (bytes_.empty()) throw std::invalid_argument("text must be non-empty");
    std::array<bool, 256> present{};
    for (unsigned char ch : bytes_) present[ch] = true;
    byte_to_code_.fill(0);
    for (int v = 0; v < 256; ++v) {
      if (present[v]) {
        byte_to_code_[v] = static_cast<Code>(++sigma_);
        code_to_byte_.push_back(static_cast<unsigned char>(v));
      }
    }
    codes_.resize(bytes_.size() + 1);
    codes_[0] = kPad;  // unused slot, positions are 1-based
    for (std::size_t i = 0; i < bytes_.size(); ++i)
      codes_[i + 1] = byte_to_code_[static_cast<unsigned char>(bytes_[i])];
  }

  Pos size() const { return static_cast<Pos>(bytes_.size()); }
  unsigned sigma() const { return sigma_; }
  Code wildcard() const { return static_cast<Code>(sigma_ + 1); }
  const std::string& bytes() const { return bytes_; }

  /// Code of the text symbol at 1-based position i; 0 past either end.
  Code at(Pos i) const { return (i >= 1 && i <= size()) ? codes_[i] : kPad; }

  /// Code of the reversed text at 1-based position i.
  Code at_reversed(Pos i) const { return at(size() - i + 1); }

  /// Maps one query byte. Bytes absent from the text get a private code
  /// above the wildcard so they hash fine but can never match a text symbol.
  Code encode_byte(unsigned char ch) const {
    Code c = byte_to_code_[ch];
    return c != 0 ? c : static_cast<Code>(sigma_ + 2 + ch);
  }

  std::vector<Code> encode(std::string_view pattern) const {
    std::vector<Code> out(pattern.size() + 1);
    out[0] = kPad;
    for (std::size_t i = 0; i < pattern.size(); ++i)
      out[i + 1] = encode_byte(static_cast<unsigned char>(pattern[i]));
    return out;
  }

  /// Inverse of the dense map; only valid for codes 1..sigma.
  unsigned char decode(Code c) const { return code_to_byte_.at(c - 1); }

 private:
  std::string bytes_;
  std::vector<Code> codes_;
  std::array<Code, 256> byte_to_code_{};
  std::vector<unsigned char> code_to_byte_;
  unsigned sigma_ = 0;
};

}  // namespace ed1x
