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

#include "sdirng/witness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reference.hpp"
#include "sdirng/protocol.hpp"

using namespace sdirng;

namespace {

Table random_table(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0, 1);
  TableMatrix<double> e;
  for (int a = 0; a < 4; ++a) {
    for (int y = 0; y < 2; ++y) e(a, y) = u(rng);
  }
  return Table(e);
}

Table from_list(std::initializer_list<double> v) {
  TableMatrix<double> e;
  int k = 0;
  for (double x : v) {
    e(k / 2, k % 2) = x;
    ++k;
  }
  return Table(e);
}

}  // namespace

TEST(WitnessCoefficients, sign_pattern) {
  const TableMatrix<double> c = witness_coefficients();
  EXPECT_EQ(c(0, 0), 1);
  EXPECT_EQ(c(0, 1), 1);
  EXPECT_EQ(c(1, 0), 1);
  EXPECT_EQ(c(1, 1), -1);
  EXPECT_EQ(c(2, 0), -1);
  EXPECT_EQ(c(2, 1), 1);
  EXPECT_EQ(c(3, 0), -1);
  EXPECT_EQ(c(3, 1), -1);
  EXPECT_EQ(c.sum(), 0);
}

TEST(WitnessValue, examples) {
  EXPECT_EQ(witness_value(Table(TableMatrix<double>::Constant(0.5))), 0.0);
  EXPECT_NEAR(witness_value(from_list({1, 0.5, 0.5, 0, 0.5, 1, 0, 0.5})), 2.0, 1e-15);
  EXPECT_NEAR(witness_value(behavior_table(qrac_preset())), 2.828, 5e-4);
  EXPECT_NEAR(witness_value(behavior_table(qrac_preset())), quantum_bound(), 1e-12);
}

TEST(WitnessValue, arbitrary_tables_within_four) {
  EXPECT_EQ(witness_value(from_list({1, 1, 1, 0, 0, 1, 0, 0})), 4.0);
  EXPECT_EQ(witness_value(from_list({0, 0, 0, 1, 1, 0, 1, 1})), -4.0);
}

TEST(WitnessValue, linearity) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const Table t1 = random_table(rng);
    const Table t2 = random_table(rng);
    const double lambda = u(rng);
    const Table mix(lambda * t1.matrix() + (1 - lambda) * t2.matrix());
    EXPECT_NEAR(witness_value(mix), lambda * witness_value(t1) + (1 - lambda) * witness_value(t2), 1e-12);
  }
}

TEST(WitnessValue, preparation_swap_antisymmetry) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 1000; ++i) {
    const Table t = random_table(rng);
    TableMatrix<double> s;
    s.row(0) = t.matrix().row(3);
    s.row(3) = t.matrix().row(0);
    s.row(1) = t.matrix().row(2);
    s.row(2) = t.matrix().row(1);
    EXPECT_NEAR(witness_value(Table(s)), -witness_value(t), 1e-12);
  }
}

TEST(WitnessValue, random_qubit_devices_respect_quantum_bound) {
  std::mt19937_64 rng(23);
  double worst = -10;
  for (int i = 0; i < 100000; ++i) {
    const double t = witness_value(behavior_table(ref::random_device(rng, i % 2 == 0)));
    worst = std::max(worst, std::abs(t));
  }
  EXPECT_LE(worst, quantum_bound() + 1e-9);
  EXPECT_GT(worst, 2.5);
}

TEST(ClassicalStrategies, enumeration_attains_two) {
  const auto all = all_deterministic_strategies();
  ASSERT_EQ(all.size(), 256u);
  double best = -10;
  int attaining = 0;
  for (const auto &s : all) {
    const double t = witness_value(strategy_table(s));
    EXPECT_LE(t, classical_bound());
    best = std::max(best, t);
    if (t == classical_bound()) ++attaining;
  }
  EXPECT_EQ(best, 2.0);
  EXPECT_GT(attaining, 0);
}

TEST(ClassicalStrategies, random_strategies_bounded) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> nibble(0, 15);
  for (int i = 0; i < 100000; ++i) {
    const DeterministicStrategy s{static_cast<std::uint8_t>(nibble(rng)), static_cast<std::uint8_t>(nibble(rng))};
    const Table t = strategy_table(s);
    for (int a = 0; a < 4; ++a) {
      for (int y = 0; y < 2; ++y) ASSERT_TRUE(t(a, y) == 0.0 || t(a, y) == 1.0);
    }
    ASSERT_LE(witness_value(t), 2.0);
  }
}

TEST(GuessingProbability, examples) {
  EXPECT_EQ(guessing_probability(Table(TableMatrix<double>::Constant(0.5))), 0.5);
  EXPECT_EQ(guessing_probability(from_list({1, 0.5, 0.5, 0, 0.5, 1, 0, 0.5})), 1.0);
  EXPECT_NEAR(guessing_probability(behavior_table(qrac_preset())), std::pow(std::cos(std::numbers::pi / 8), 2), 1e-12);
}

TEST(GuessingProbability, includes_outcome_one) {
  // Only b=1 is predictable here.
  const Table t = from_list({0.5, 0.5, 0.5, 0.02, 0.5, 0.5, 0.5, 0.5});
  EXPECT_NEAR(guessing_probability(t), 0.98, 1e-15);
  const GuessingCell c = guessing_cell(t);
  EXPECT_EQ(c.a, 1);
  EXPECT_EQ(c.y, 1);
  EXPECT_EQ(c.b, 1);
}

TEST(GuessingProbability, tie_break_is_lexicographic) {
  const GuessingCell c = guessing_cell(Table(TableMatrix<double>::Constant(0.5)));
  EXPECT_EQ(c.a, 0);
  EXPECT_EQ(c.y, 0);
  EXPECT_EQ(c.b, 0);
  const GuessingCell d = guessing_cell(behavior_table(bb84_preset()));
  EXPECT_EQ(d.a, 0);
  EXPECT_EQ(d.y, 0);
  EXPECT_EQ(d.b, 0);
}

TEST(GuessingProbability, bounds_on_random_tables) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 1000; ++i) {
    const auto r = certify_table(random_table(rng));
    EXPECT_GE(r.p_guess, 0.5);
    EXPECT_LE(r.p_guess, 1.0);
    EXPECT_GE(r.h_min, 0.0);
    EXPECT_LE(r.h_min, 1.0);
  }
}

TEST(MinEntropy, examples) {
  EXPECT_EQ(min_entropy(1.0), 0.0);
  EXPECT_FALSE(std::signbit(min_entropy(1.0)));
  EXPECT_EQ(min_entropy(0.5), 1.0);
  EXPECT_NEAR(min_entropy(0.85355), 0.228452, 1e-6);
  EXPECT_NEAR(min_entropy(std::pow(std::cos(std::numbers::pi / 8), 2)), 0.2284467, 1e-7);
}

TEST(MinEntropy, domain) {
  EXPECT_THROW(min_entropy(0.49), DomainError);
  EXPECT_THROW(min_entropy(1.01), DomainError);
  EXPECT_THROW(min_entropy(std::nan("")), DomainError);
}

TEST(Bounds, values) {
  EXPECT_EQ(classical_bound(), 2.0);
  EXPECT_DOUBLE_EQ(quantum_bound(), 2 * std::sqrt(2.0));
  EXPECT_NEAR(quantum_bound(), 2.8284271, 1e-7);
  EXPECT_NEAR(quantum_bound() - classical_bound(), 0.8284271, 1e-7);
  static_assert(classical_bound<float>() == 2.0f);
}

TEST(Witness, float_instantiation) {
  // Templates work for other scalars.
  const PureQubit<float> q(0.5f, 0.25f);
  const BinaryMeasurement<float> m(1.0f, 0.0f);
  const float p = born_probability(q, m, 0);
  EXPECT_NEAR(p, 0.5 * (1 + std::cos(0.5) * std::cos(1.0) + std::sin(0.5) * std::sin(1.0) * std::cos(0.25)), 1e-5);
}
