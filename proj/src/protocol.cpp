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

#include "sdirng/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sdirng/behavior_table.hpp"
#include "sdirng/errors.hpp"
#include "sdirng/random.hpp"
#include "sdirng/witness.hpp"

namespace sdirng {

namespace {

const char *kLabels[4] = {"00", "01", "10", "11"};

}  // namespace

void NoiseModel::validate() const {
  if (!(depolarizing_q >= 0 && depolarizing_q <= 1)) throw DomainError("depolarizing_q must be in [0, 1]");
  if (!(flip_p >= 0 && flip_p <= 1)) throw DomainError("flip_p must be in [0, 1]");
}

double NoiseModel::apply(double e) const {
  const double depolarized = (1 - depolarizing_q) * e + depolarizing_q / 2;
  return (1 - flip_p) * depolarized + flip_p * (1 - depolarized);
}

std::vector<RoundRecord> run_rounds(const QubitDevice &d, const NoiseModel &noise,
                                    std::uint64_t begin, std::uint64_t end, std::uint64_t seed) {
  noise.validate();
  if (end < begin) throw DomainError("round range is reversed");
  const Table table = behavior_table(d);
  std::array<std::array<double, 2>, 4> p0{};
  for (int a = 0; a < 4; ++a) {
    for (int y = 0; y < 2; ++y) p0[a][y] = noise.apply(table(a, y));
  }

  const CounterRng rng(seed);
  std::vector<RoundRecord> out;
  out.reserve(end - begin);
  for (std::uint64_t i = begin; i < end; ++i) {
    const std::uint64_t inputs = rng.bits(2 * i);
    const auto a = static_cast<std::uint8_t>(inputs & 3U);
    const auto y = static_cast<std::uint8_t>((inputs >> 2) & 1U);
    const double u = rng.uniform(2 * i + 1);
    out.push_back({a, y, static_cast<std::uint8_t>(u < p0[a][y] ? 0 : 1)});
  }
  return out;
}

double hoeffding_deviation(std::uint64_t cell_rounds, double confidence) {
  if (!(confidence > 0 && confidence < 1)) throw DomainError("confidence must be in (0, 1)");
  if (cell_rounds == 0) throw DomainError("Hoeffding deviation needs at least one round");
  return std::sqrt(std::log(8.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(cell_rounds)));
}

EstimationReport estimate_witness(std::span<const RoundRecord> records, double confidence) {
  if (!(confidence > 0 && confidence < 1)) throw DomainError("confidence must be in (0, 1)");
  EstimationReport r;
  r.n_rounds = records.size();
  r.confidence = confidence;
  for (const RoundRecord &rec : records) {
    if (rec.a > 3 || rec.y > 1 || rec.b > 1) throw DomainError("malformed round record");
    CellCounts &c = r.counts[rec.a][rec.y];
    ++c.rounds;
    if (rec.b == 0) ++c.zeros;
  }
  TableMatrix<double> e;
  double deviation = 0;
  for (int a = 0; a < 4; ++a) {
    for (int y = 0; y < 2; ++y) {
      const CellCounts &c = r.counts[a][y];
      if (c.rounds == 0) {
        throw EstimationError(std::string("cell a=") + kLabels[a] + " y=" + std::to_string(y) +
                              " has no rounds");
      }
      e(a, y) = static_cast<double>(c.zeros) / static_cast<double>(c.rounds);
      deviation += hoeffding_deviation(c.rounds, confidence);
    }
  }
  r.t_hat = witness_value(Table(e));
  r.t_lower = r.t_hat - deviation;
  return r;
}

double certify_witness(double t_lower, std::span<const CurvePoint> curve) {
  constexpr double kSlack = 1e-6;
  const double top = quantum_bound();
  if (curve.empty()) throw DomainError("certification curve is empty");
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].t_target > curve[i - 1].t_target)) {
      throw DomainError("certification curve must be ascending in T");
    }
  }
  if (curve.front().t_target > classical_bound() + 1e-9 || curve.back().t_target < top - kSlack) {
    throw DomainError("certification curve must cover [2, 2*sqrt(2)]");
  }
  if (t_lower > top + kSlack) {
    throw InconsistencyError("witness lower bound " + std::to_string(t_lower) +
                             " exceeds 2*sqrt(2): the qubit assumption or the statistics are broken");
  }
  if (t_lower <= classical_bound()) return 0;

  double threshold = curve.front().t_target;
  for (const CurvePoint &p : curve) {
    if (p.h_min <= 0) threshold = p.t_target;
  }
  if (t_lower <= threshold) return 0;
  if (t_lower >= curve.back().t_target) return std::max(0.0, curve.back().h_min);

  const auto upper = std::upper_bound(curve.begin(), curve.end(), t_lower,
                                      [](double t, const CurvePoint &p) { return t < p.t_target; });
  const CurvePoint &hi = *upper;
  const CurvePoint &lo = *(upper - 1);
  const double w = (t_lower - lo.t_target) / (hi.t_target - lo.t_target);
  return std::max(0.0, (1 - w) * lo.h_min + w * hi.h_min);
}

double certify(const EstimationReport &report, std::span<const CurvePoint> curve) {
  return certify_witness(report.t_lower, curve);
}

BitString outcome_bits(std::span<const RoundRecord> records) {
  BitString out(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) out.set(i, records[i].b != 0);
  return out;
}

QubitDevice qrac_preset() {
  constexpr double pi = std::numbers::pi;
  // cos(7pi/8)|0> + sin(7pi/8)|1> equals cos(pi/8)|0> - sin(pi/8)|1> up to a
  // global phase, i.e. theta = pi/4, eta = pi; likewise for k = 5.
  return QubitDevice{{Qubit(pi / 4, 0), Qubit(pi / 4, pi), Qubit(3 * pi / 4, 0), Qubit(3 * pi / 4, pi)},
                     {Measurement::computational(), Measurement(pi / 2, 0)}};
}

QubitDevice bb84_preset() {
  constexpr double pi = std::numbers::pi;
  return QubitDevice{{Qubit(0, 0), Qubit(pi / 2, pi), Qubit(pi / 2, 0), Qubit(pi, 0)},
                     {Measurement::computational(), Measurement(pi / 2, 0)}};
}

QubitDevice preset_by_name(const std::string &name) {
  if (name == "qrac") return qrac_preset();
  if (name == "bb84") return bb84_preset();
  throw DomainError("unknown preset '" + name + "' (expected qrac or bb84)");
}

}  // namespace sdirng
