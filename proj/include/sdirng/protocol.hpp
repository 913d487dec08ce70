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

// Finite-round simulation of the prepare-and-measure protocol, witness
// estimation with confidence bounds, certification and extraction.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdirng/bitstring.hpp"
#include "sdirng/optimizer.hpp"
#include "sdirng/qubit.hpp"

namespace sdirng {

/// One protocol round: preparation a (0..3 for 00..11), measurement y and
/// outcome b.
struct RoundRecord {
  std::uint8_t a;
  std::uint8_t y;
  std::uint8_t b;
  friend bool operator==(const RoundRecord &, const RoundRecord &) = default;
};

/// Depolarizing noise on the preparation followed by a flip of the outcome.
struct NoiseModel {
  double depolarizing_q = 0;
  double flip_p = 0;

  void validate() const;
  /// P(b=0) after noise, given the noiseless P(b=0).
  double apply(double e) const;
};

/// Rounds [begin, end) of the run keyed by `seed`. Round i depends only on
/// (device, noise, seed, i), so any sharding gives the same records.
std::vector<RoundRecord> run_rounds(const QubitDevice &d, const NoiseModel &noise,
                                    std::uint64_t begin, std::uint64_t end, std::uint64_t seed);

inline std::vector<RoundRecord> run_rounds(const QubitDevice &d, const NoiseModel &noise,
                                           std::uint64_t n, std::uint64_t seed) {
  return run_rounds(d, noise, 0, n, seed);
}

struct CellCounts {
  std::uint64_t rounds = 0;
  std::uint64_t zeros = 0;
  friend bool operator==(const CellCounts &, const CellCounts &) = default;
};

using CellTable = std::array<std::array<CellCounts, 2>, 4>;

struct EstimationReport {
  std::uint64_t n_rounds = 0;
  CellTable counts{};
  double t_hat = 0;
  double t_lower = 0;
  double confidence = 0;
  /// Filled in by certify(); zero until then.
  double h_min_certified = 0;
};

/// One-sided Hoeffding deviation for one of eight cells, level (1 - confidence) / 8.
double hoeffding_deviation(std::uint64_t cell_rounds, double confidence);

/// Plug-in witness estimate and its lower confidence bound.
/// Throws EstimationError when a cell has no rounds.
EstimationReport estimate_witness(std::span<const RoundRecord> records, double confidence);

/// Certified min-entropy per round at witness value t_lower, by linear
/// interpolation on a curve covering [2, 2 sqrt(2)]. Zero at or below
/// T = 2 and at or below the last zero of the curve; the curve's top value
/// above its last point. Throws InconsistencyError above 2 sqrt(2).
double certify_witness(double t_lower, std::span<const CurvePoint> curve);

/// certify_witness at report.t_lower (never at t_hat).
double certify(const EstimationReport &report, std::span<const CurvePoint> curve);

struct ExtractionParams {
  std::size_t input_length = 0;
  double min_entropy_rate = 0;
  double security_parameter = 0;
  BitString seed;

  /// max(0, floor(n h - 2 log2(1/eps))).
  static std::size_t output_length_for(std::size_t n, double h, double eps);
  /// n + m - 1, or n - 1 when m is zero.
  static std::size_t seed_length_for(std::size_t n, std::size_t m);

  std::size_t output_length() const {
    return output_length_for(input_length, min_entropy_rate, security_parameter);
  }
  void validate() const;
};

/// Toeplitz hash over GF(2): out_i = sum_j seed[i - j + n - 1] raw_j.
BitString extract_bits(const BitString &raw, const ExtractionParams &params);

/// Outcome bits b in round order.
BitString outcome_bits(std::span<const RoundRecord> records);

/// Four states cos(k pi/8)|0> + sin(k pi/8)|1> for k = 1, 7, 3, 5; measurements
/// |0><0| and |+><+|.
QubitDevice qrac_preset();
/// States |0>, |->, |+>, |1>; same measurements as the QRAC preset.
QubitDevice bb84_preset();

/// "qrac" or "bb84"; DomainError otherwise.
QubitDevice preset_by_name(const std::string &name);

}  // namespace sdirng
