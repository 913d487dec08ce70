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

#include <bit>
#include <cmath>

#include "sdirng/bitstring.hpp"
#include "sdirng/errors.hpp"
#include "sdirng/protocol.hpp"
#include "sdirng/random.hpp"

namespace sdirng {

BitString BitString::from_bits(std::span<const std::uint8_t> bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw DomainError("bit values must be 0 or 1");
    out.set(i, bits[i] != 0);
  }
  return out;
}

BitString BitString::random(std::size_t size, std::uint64_t seed) {
  BitString out(size);
  const CounterRng rng(seed, /*stream=*/0xB175);
  for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] = rng.bits(w);
  if (size % 64 != 0 && !out.words_.empty()) out.words_.back() &= (std::uint64_t{1} << (size % 64)) - 1;
  return out;
}

std::uint64_t BitString::window(std::size_t pos) const {
  const std::size_t w = pos >> 6;
  const unsigned shift = pos & 63;
  const std::uint64_t lo = w < words_.size() ? words_[w] : 0;
  if (shift == 0) return lo;
  const std::uint64_t hi = w + 1 < words_.size() ? words_[w + 1] : 0;
  return (lo >> shift) | (hi << (64 - shift));
}

std::size_t BitString::popcount() const {
  std::size_t n = 0;
  for (const std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitString BitString::reversed() const {
  BitString out(size_);
  for (std::size_t i = 0; i < size_; ++i) out.set(size_ - 1 - i, get(i));
  return out;
}

BitString &BitString::operator^=(const BitString &other) {
  if (other.size_ != size_) throw DomainError("xor of bit strings with different lengths");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::vector<std::uint8_t> BitString::to_bytes_msb_first() const {
  std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

std::size_t ExtractionParams::output_length_for(std::size_t n, double h, double eps) {
  if (!(h >= 0 && h <= 1)) throw DomainError("min-entropy rate must be in [0, 1]");
  if (!(eps > 0 && eps < 1)) throw DomainError("security parameter must be in (0, 1)");
  const double m = std::floor(static_cast<double>(n) * h - 2 * std::log2(1 / eps));
  return m > 0 ? static_cast<std::size_t>(m) : 0;
}

std::size_t ExtractionParams::seed_length_for(std::size_t n, std::size_t m) {
  if (n + m == 0) return 0;
  return n + m - 1;
}

void ExtractionParams::validate() const {
  const std::size_t m = output_length();
  const std::size_t expected = seed_length_for(input_length, m);
  if (seed.size() != expected) {
    throw DomainError("extractor seed has " + std::to_string(seed.size()) + " bits, expected " +
                      std::to_string(expected) + " for n=" + std::to_string(input_length) +
                      ", m=" + std::to_string(m));
  }
}

BitString extract_bits(const BitString &raw, const ExtractionParams &params) {
  if (raw.size() != params.input_length) {
    throw DomainError("raw input has " + std::to_string(raw.size()) + " bits, expected " +
                      std::to_string(params.input_length));
  }
  params.validate();
  const std::size_t m = params.output_length();
  BitString out(m);
  if (m == 0) return out;

  // With the raw string reversed, row i of the Toeplitz matrix is the seed
  // window [i, i + n): out_i = parity(seed[i .. i+n) & reversed(raw)).
  const BitString rev = raw.reversed();
  const std::span<const std::uint64_t> rw = rev.words();
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < rw.size(); ++w) acc ^= params.seed.window(i + 64 * w) & rw[w];
    out.set(i, std::popcount(acc) & 1);
  }
  return out;
}

}  // namespace sdirng
