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

// Maximization of the guessing probability at a fixed witness value over
// all qubit devices, the curve sweep built on it, and an exhaustive grid
// oracle used to verify it.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sdirng/qubit.hpp"

namespace sdirng {

using RawParameters = Eigen::Matrix<double, 10, 1>;

/// Search-space point: (theta_a, eta_a) for a = 00, 01, 10, 11 followed by
/// (theta, eta) of measurement y=1. Measurement y=0 is pinned to |0><0|.
/// Values are always in canonical range.
class ParameterVector {
 public:
  static constexpr int kSize = 10;

  ParameterVector();
  /// Throws DomainError when a value is outside its canonical range.
  explicit ParameterVector(const RawParameters &values);
  /// Maps arbitrary reals onto the canonical range without changing the
  /// physical state (theta folded into [0, pi], eta wrapped into [0, 2pi)).
  static ParameterVector canonical(const RawParameters &raw);
  /// Inverse of to_device(); requires measurement y=0 to be computational.
  static ParameterVector from_device(const QubitDevice &d);

  QubitDevice to_device() const;
  const RawParameters &values() const { return values_; }
  double operator[](int i) const { return values_(i); }

  friend bool operator==(const ParameterVector &x, const ParameterVector &y) {
    return x.values_ == y.values_;
  }

 private:
  RawParameters values_;
};

/// Lexicographic order on parameters; the tie-break of every reduction.
bool lexicographically_less(const ParameterVector &x, const ParameterVector &y);

struct OptimizationSettings {
  int starts = 64;
  std::vector<double> penalty_weight_schedule{10.0, 100.0, 1000.0, 10000.0};
  double constraint_tolerance = 1e-4;
  double convergence_tolerance = 1e-9;
  int max_iterations = 5000;
  std::uint64_t rng_seed = 1;
  /// 0 selects std::thread::hardware_concurrency(). Results do not depend on it.
  int threads = 1;

  /// Throws DomainError on a non-increasing schedule or non-positive tolerances.
  void validate() const;
};

struct CurvePoint {
  double t_target = 0;
  double p_guess = 1;
  double h_min = 0;
  ParameterVector argmax_params;
  double achieved_t = 0;
  /// Set when monotone post-processing raised p_guess above what
  /// argmax_params achieves.
  bool monotone_filled = false;
};

/// Per-stage record of the winning start, for diagnostics.
struct OptimizationTrace {
  std::vector<double> stage_residuals;
  int winning_start = -1;
};

/// Best feasible device found for the witness constraint |T - t_target| <=
/// constraint_tolerance. The returned p_guess is a lower bound on the true
/// maximum. Throws InfeasibleError when no start reaches the constraint.
CurvePoint maximize_guessing_at_t(double t_target, const OptimizationSettings &s,
                                  std::span<const ParameterVector> warm_starts = {},
                                  OptimizationTrace *trace = nullptr);

struct SweepFailure {
  double t_target;
  std::string message;
  double best_residual;
};

/// One point per grid value, ascending, each warm-started from the previous
/// argmax. p_guess is made non-increasing along the grid. If `failures` is
/// null, the first infeasible point throws; otherwise failures are recorded
/// and the point is omitted.
std::vector<CurvePoint> sweep_curve(std::span<const double> t_grid, const OptimizationSettings &s,
                                    std::vector<SweepFailure> *failures = nullptr);

/// t_min, t_min + step, ... up to t_max, plus t_max itself when it is not on
/// the lattice.
std::vector<double> make_grid(double t_min, double t_max, double step);
/// 2.00 to 2.82 in steps of 0.02 plus 2 sqrt(2): 43 points.
std::vector<double> default_curve_grid();

enum class Sense { kMaximize, kMinimize };

struct WitnessExtremum {
  double t = 0;
  ParameterVector argmax;
};

WitnessExtremum maximize_witness(const OptimizationSettings &s, Sense sense = Sense::kMaximize);

struct OracleOptions {
  /// Also put measurement y=0 on the grid instead of pinning it to |0><0|.
  bool free_first_measurement = false;
};

/// Exhaustive search over the uniform angle grid (`resolution` points per
/// angle; theta grids include 0 and pi, eta grids include 0 and exclude 2pi).
/// Returns the largest guessing probability among grid devices with
/// |T - t_target| <= band. Throws InfeasibleError if no grid device is in band.
double grid_oracle_max_guessing(double t_target, int resolution, double band,
                                const OracleOptions &options = {});

namespace detail {

struct FastEvaluation {
  double t;
  double p_guess;
};

/// Witness and guessing probability via Bloch-vector inner products.
/// Accepts parameters in any range.
FastEvaluation fast_evaluate(const RawParameters &x);
RawParameters witness_gradient(const RawParameters &x);

}  // namespace detail

}  // namespace sdirng
