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

// Dimension witness, guessing probability and min-entropy of a behavior
// table.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "sdirng/behavior_table.hpp"
#include "sdirng/errors.hpp"

namespace sdirng {

/// Signs c(a, y) of T = sum c(a, y) E(a, y):
///   T = E00,0 + E00,1 + E01,0 - E01,1 - E10,0 + E10,1 - E11,0 - E11,1.
template <typename Scalar = double>
TableMatrix<Scalar> witness_coefficients() {
  TableMatrix<Scalar> c;
  c << 1, 1,
       1, -1,
      -1, 1,
      -1, -1;
  return c;
}

template <typename Scalar>
Scalar witness_value(const BehaviorTable<Scalar> &t) {
  return (witness_coefficients<Scalar>().array() * t.matrix().array()).sum();
}

/// Largest T reachable when the message is one classical bit.
template <typename Scalar = double>
constexpr Scalar classical_bound() {
  return Scalar(2);
}

/// Largest T reachable with qubit messages, 2 sqrt(2).
template <typename Scalar = double>
constexpr Scalar quantum_bound() {
  return Scalar(2) * std::numbers::sqrt2_v<Scalar>;
}

struct GuessingCell {
  int a;
  int y;
  int b;
};

/// Cell (a, y, b) maximizing P(b|a,y); ties go to the first in (a, y, b)
/// lexicographic order.
template <typename Scalar>
GuessingCell guessing_cell(const BehaviorTable<Scalar> &t) {
  GuessingCell best{0, 0, 0};
  Scalar best_p = t.probability(0, 0, 0);
  for (int a = 0; a < 4; ++a) {
    for (int y = 0; y < 2; ++y) {
      for (int b = 0; b < 2; ++b) {
        const Scalar p = t.probability(b, a, y);
        if (p > best_p) {
          best_p = p;
          best = {a, y, b};
        }
      }
    }
  }
  return best;
}

/// max over (a, y, b) of P(b|a,y); never below 1/2.
template <typename Scalar>
Scalar guessing_probability(const BehaviorTable<Scalar> &t) {
  const TableMatrix<Scalar> &e = t.matrix();
  return e.cwiseMax(TableMatrix<Scalar>::Ones() - e).maxCoeff();
}

template <typename Scalar>
Scalar min_entropy(Scalar p_guess) {
  if (!(p_guess >= Scalar(0.5) && p_guess <= Scalar(1))) {
    throw DomainError("guessing probability " + std::to_string(double(p_guess)) +
                      " outside [0.5, 1]");
  }
  // -log2(1) is -0.0; report +0.
  return p_guess == Scalar(1) ? Scalar(0) : -std::log2(p_guess);
}

template <typename Scalar>
struct CertificationResult {
  Scalar t_value;
  Scalar p_guess;
  Scalar h_min;
};

template <typename Scalar>
CertificationResult<Scalar> certify_table(const BehaviorTable<Scalar> &t) {
  const Scalar p = guessing_probability(t);
  return {witness_value(t), p, min_entropy(p)};
}

/// Deterministic classical strategy with a one-bit message: the preparation
/// box sends m = encode(a), the measurement box outputs b = decode(y, m).
/// Bit a of `encoding` is encode(a); bit (2y + m) of `decoding` is decode(y, m).
struct DeterministicStrategy {
  std::uint8_t encoding;
  std::uint8_t decoding;
};

Table strategy_table(DeterministicStrategy s);

/// All 16 x 16 bit-message strategies.
std::vector<DeterministicStrategy> all_deterministic_strategies();

}  // namespace sdirng
