// Copyright 2026 The sdirng Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Packed bit strings for outcome records, extractor seeds and output.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sdirng {

/// Fixed-length bit string. Bit i lives in word i / 64 at position i % 64;
/// bits past size() are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  /// From a sequence of 0/1 values.
  static BitString from_bits(std::span<const std::uint8_t> bits);
  /// size bits drawn from the counter-based generator keyed by seed.
  static BitString random(std::size_t size, std::uint64_t seed);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  /// The 64 bits starting at `pos` (bit pos in the lowest position), zero
  /// past the end.
  std::uint64_t window(std::size_t pos) const;
  std::span<const std::uint64_t> words() const { return words_; }
  std::size_t popcount() const;

  BitString reversed() const;
  BitString &operator^=(const BitString &other);
  friend BitString operator^(BitString a, const BitString &b) { return a ^= b; }
  friend bool operator==(const BitString &, const BitString &) = default;

  /// Most-significant-bit-first packing: bit 0 becomes the top bit of byte 0.
  /// The final partial byte is zero padded.
  std::vector<std::uint8_t> to_bytes_msb_first() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace sdirng
