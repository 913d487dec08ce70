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

#include "sdirng/qubit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reference.hpp"
#include "sdirng/behavior_table.hpp"
#include "sdirng/protocol.hpp"

using namespace sdirng;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(StateFromAngles, poles) {
  const auto north = state_from_angles(0.0, 0.0);
  EXPECT_EQ(north(0), Complex<double>(1, 0));
  EXPECT_EQ(std::abs(north(1)), 0.0);
  const auto south = state_from_angles(kPi, 0.0);
  EXPECT_NEAR(std::abs(south(0)), 0.0, 1e-15);
  EXPECT_NEAR(south(1).real(), 1.0, 1e-15);
}

TEST(StateFromAngles, qrac_first_state) {
  const auto v = state_from_angles(kPi / 4, 0.0);
  EXPECT_NEAR(v(0).real(), std::cos(kPi / 8), 1e-15);
  EXPECT_NEAR(v(1).real(), std::sin(kPi / 8), 1e-15);
  EXPECT_NEAR(v(0).real(), 0.92388, 1e-5);
  EXPECT_NEAR(v(1).real(), 0.38268, 1e-5);
}

TEST(StateFromAngles, rejects_out_of_range) {
  EXPECT_THROW(state_from_angles(-1e-9, 0.0), DomainError);
  EXPECT_THROW(state_from_angles(kPi + 1e-9, 0.0), DomainError);
  EXPECT_THROW(state_from_angles(0.0, 2 * kPi), DomainError);
  EXPECT_THROW(state_from_angles(0.0, -0.1), DomainError);
  EXPECT_THROW(state_from_angles(std::nan(""), 0.0), DomainError);
  EXPECT_THROW(Qubit(4.0, 0.0), DomainError);
  EXPECT_THROW(Measurement(0.0, 7.0), DomainError);
}

TEST(PureQubit, density_is_rank_one_projector) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0, kPi), et(0, 2 * kPi);
  for (int i = 0; i < 200; ++i) {
    const Qubit q(th(rng), et(rng));
    const Matrix2c<double> rho = q.density();
    EXPECT_NEAR((rho - rho.adjoint()).norm(), 0.0, 1e-12);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR((rho * rho - rho).norm(), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(rho.determinant()), 0.0, 1e-12);
    EXPECT_NEAR(q.amplitudes().squaredNorm(), 1.0, 1e-12);
  }
}

TEST(Projector, computational_is_exact) {
  const Matrix2c<double> p = projector_p0(Measurement::computational());
  EXPECT_EQ(p(0, 0), Complex<double>(1, 0));
  EXPECT_EQ(p(0, 1), Complex<double>(0, 0));
  EXPECT_EQ(p(1, 0), Complex<double>(0, 0));
  EXPECT_EQ(p(1, 1), Complex<double>(0, 0));
  // The flag wins over the angles.
  EXPECT_EQ(projector_p0(Measurement(1.0, 2.0, true)), p);
}

TEST(Projector, plus_state) {
  const Matrix2c<double> p = projector_p0(Measurement(kPi / 2, 0.0));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(p(i, j) - Complex<double>(0.5, 0)), 0.0, 1e-15);
  }
}

TEST(Projector, theta_zero_degenerates_to_computational) {
  for (double eta : {0.0, 1.0, 4.0}) {
    const Matrix2c<double> p = projector_p0(Measurement(0.0, eta));
    EXPECT_NEAR((p - projector_p0(Measurement::computational())).norm(), 0.0, 1e-15);
  }
}

TEST(Projector, idempotent_hermitian_and_complement) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> th(0, kPi), et(0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const Measurement m(th(rng), et(rng));
    const Matrix2c<double> p0 = projector_p0(m);
    EXPECT_NEAR((p0 * p0 - p0).norm(), 0.0, 1e-12);
    EXPECT_NEAR((p0 - p0.adjoint()).norm(), 0.0, 1e-12);
    EXPECT_EQ(projector(m, 0) + projector(m, 1), Matrix2c<double>::Identity());
  }
}

TEST(BornProbability, examples) {
  const Measurement z = Measurement::computational();
  EXPECT_DOUBLE_EQ(born_probability(Qubit(0, 0), z, 0), 1.0);
  EXPECT_NEAR(born_probability(Qubit(kPi / 4, 0), z, 0), std::pow(std::cos(kPi / 8), 2), 1e-15);
  EXPECT_NEAR(born_probability(Qubit(kPi / 4, 0), z, 0), 0.85355, 1e-5);
  EXPECT_NEAR(born_probability(Qubit(kPi / 2, kPi / 2), Measurement(kPi / 2, 0), 0), 0.5, 1e-15);
}

TEST(BornProbability, rejects_bad_outcome) {
  EXPECT_THROW(born_probability(Qubit(0, 0), Measurement::computational(), 2), DomainError);
  EXPECT_THROW(born_probability(Qubit(0, 0), Measurement::computational(), -1), DomainError);
}

TEST(BornProbability, normalization_property) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0, kPi), et(0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const Qubit q(th(rng), et(rng));
    const Measurement m(th(rng), et(rng));
    const double p0 = born_probability(q, m, 0);
    const double p1 = born_probability(q, m, 1);
    EXPECT_GE(p0, 0.0);
    EXPECT_LE(p0, 1.0);
    EXPECT_NEAR(p0 + p1, 1.0, 1e-12);
  }
}

TEST(BornProbability, global_phase_irrelevant) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> th(0, kPi), et(0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const Qubit q(th(rng), et(rng));
    const Measurement m(th(rng), et(rng));
    const AmplitudePair<double> phased = std::polar(1.0, et(rng)) * q.amplitudes();
    for (int b = 0; b < 2; ++b) EXPECT_NEAR(born_probability(phased, m, b), born_probability(q, m, b), 1e-12);
  }
}

TEST(BornProbability, antipodal_states_complement) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(0, kPi), et(0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const double theta = th(rng);
    const double eta = et(rng);
    const Qubit q(theta, eta);
    const Qubit flipped(kPi - theta, std::fmod(eta + kPi, 2 * kPi));
    const Measurement m(th(rng), et(rng));
    EXPECT_NEAR(born_probability(q, m, 0), born_probability(flipped, m, 1), 1e-12);
  }
}

TEST(BehaviorTable, qrac_entries) {
  const Table t = behavior_table(qrac_preset());
  const double hi = std::pow(std::cos(kPi / 8), 2);
  const double lo = 1 - hi;
  // Large entries exactly where the witness sign is +1.
  const double expected[4][2] = {{hi, hi}, {hi, lo}, {lo, hi}, {lo, lo}};
  for (int a = 0; a < 4; ++a) {
    for (int y = 0; y < 2; ++y) EXPECT_NEAR(t(a, y), expected[a][y], 1e-12) << a << "," << y;
  }
}

TEST(BehaviorTable, bb84_entries) {
  const Table t = behavior_table(bb84_preset());
  const double expected[8] = {1, 0.5, 0.5, 0, 0.5, 1, 0, 0.5};
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(t(k / 2, k % 2), expected[k], 1e-12) << k;
}

TEST(BehaviorTable, unbiased_device) {
  const Qubit q(kPi / 2, kPi / 2);
  const QubitDevice d{{q, q, q, q}, {Measurement::computational(), Measurement(kPi / 2, 0)}};
  const Table t = behavior_table(d);
  for (int a = 0; a < 4; ++a) {
    for (int y = 0; y < 2; ++y) EXPECT_NEAR(t(a, y), 0.5, 1e-15);
  }
}

TEST(BehaviorTable, rejects_non_probabilities) {
  TableMatrix<double> e = TableMatrix<double>::Constant(0.5);
  e(2, 1) = 1.5;
  EXPECT_THROW(Table{e}, DomainError);
}

TEST(BlochVector, matches_born_rule) {
  // P(b=0) = (1 + r . m) / 2 for pure states and rank-one projectors.
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    const QubitDevice d = ref::random_device(rng, false);
    for (const Qubit &q : d.preparations) {
      for (const Measurement &m : d.measurements) {
        EXPECT_NEAR(born_probability(q, m, 0), 0.5 * (1 + q.bloch().dot(m.bloch())), 1e-12);
      }
    }
  }
}
