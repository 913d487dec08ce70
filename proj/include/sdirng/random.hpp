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

#pragma once

#include <cstdint>
#include <limits>

namespace sdirng {

/// Counter-based generator. Output k of stream s under key is a pure function
/// of (key, s, k), so independent work items (multi-start seeds, protocol
/// rounds) can be generated in any order or split across threads.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key, std::uint64_t stream = 0)
      : base_(mix(key ^ mix(stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t bits(std::uint64_t counter) const { return mix(base_ + (counter + 1) * kGamma); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Sequential view over one stream; satisfies UniformRandomBitGenerator.
  class Cursor;
  Cursor cursor(std::uint64_t start = 0) const;

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
};

class CounterRng::Cursor {
 public:
  using result_type = std::uint64_t;
  Cursor(const CounterRng &rng, std::uint64_t start) : rng_(rng), next_(start) {}
  std::uint64_t operator()() { return rng_.bits(next_++); }
  double uniform() { return rng_.uniform(next_++); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

 private:
  CounterRng rng_;
  std::uint64_t next_;
};

inline CounterRng::Cursor CounterRng::cursor(std::uint64_t start) const { return Cursor(*this, start); }

}  // namespace sdirng
