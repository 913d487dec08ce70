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

// Exhaustive grid search for the guessing-probability maximum at a fixed
// witness value.
//
// For a fixed pair of measurements the witness splits into a sum of four
// per-preparation terms and the guessing probability is a max of
// per-preparation terms. So "some grid device with |T - t| <= band has a
// cell with bias g" reduces to a range query over sums of the other three
// preparations' terms. Pair sums are sorted once per measurement pair, which
// makes the search exact (grid devices are not sampled) at a fraction of the
// cost of visiting all resolution^10 devices.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "sdirng/errors.hpp"
#include "sdirng/optimizer.hpp"
#include "sdirng/qubit.hpp"
#include "sdirng/witness.hpp"

namespace sdirng {

namespace {

struct GridAngles {
  double theta;
  double eta;
};

std::vector<GridAngles> grid_angles(int resolution) {
  std::vector<GridAngles> out;
  for (int i = 0; i < resolution; ++i) {
    const double theta = std::numbers::pi * i / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      out.push_back({theta, 2 * std::numbers::pi * j / resolution});
    }
  }
  return out;
}

// Is there (i, j, k) with lo <= u[i] + v[j] + w[k] <= hi ? `vw` holds the
// sorted sums v[j] + w[k].
bool triple_sum_in_range(const std::vector<double> &u, const std::vector<double> &vw, double lo,
                         double hi) {
  for (const double x : u) {
    const auto it = std::lower_bound(vw.begin(), vw.end(), lo - x);
    if (it != vw.end() && *it <= hi - x) return true;
  }
  return false;
}

std::vector<double> sorted_pair_sums(const std::vector<double> &v, const std::vector<double> &w) {
  std::vector<double> out;
  out.reserve(v.size() * w.size());
  for (const double x : v) {
    for (const double y : w) out.push_back(x + y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double grid_oracle_max_guessing(double t_target, int resolution, double band,
                                const OracleOptions &options) {
  if (resolution < 5) throw DomainError("grid resolution must be at least 5");
  if (!(band > 0)) throw DomainError("band must be positive");

  const std::vector<GridAngles> angles = grid_angles(resolution);
  const std::size_t n = angles.size();
  std::vector<Qubit> states;
  std::vector<Measurement> measurements;
  for (const auto &g : angles) {
    states.emplace_back(g.theta, g.eta);
    measurements.emplace_back(g.theta, g.eta);
  }

  // E[s][m] = P(b=0 | state s, measurement m) through the Born rule.
  std::vector<double> born(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) born[i * n + j] = born_probability(states[i], measurements[j], 0);
  }
  std::vector<double> born_computational(n);
  for (std::size_t i = 0; i < n; ++i) {
    born_computational[i] = born_probability(states[i], Measurement::computational(), 0);
  }

  const TableMatrix<double> c = witness_coefficients<double>();
  const std::size_t first_measurements = options.free_first_measurement ? n : 1;

  double best = -1;
  double best_residual = std::numeric_limits<double>::infinity();
  std::array<std::vector<double>, 4> terms;
  for (auto &t : terms) t.resize(n);
  std::vector<double> bias(n);
  std::vector<std::size_t> order(n);

  for (std::size_t m0 = 0; m0 < first_measurements && best < 1.0; ++m0) {
    for (std::size_t m1 = 0; m1 < n && best < 1.0; ++m1) {
      for (std::size_t s = 0; s < n; ++s) {
        const double e0 = options.free_first_measurement ? born[s * n + m0] : born_computational[s];
        const double e1 = born[s * n + m1];
        for (int a = 0; a < 4; ++a) terms[a][s] = c(a, 0) * e0 + c(a, 1) * e1;
        bias[s] = std::max({e0, 1 - e0, e1, 1 - e1});
      }
      // Nearest reachable witness value, for the infeasibility report.
      {
        std::array<double, 4> lo{}, hi{};
        for (int a = 0; a < 4; ++a) {
          const auto [mn, mx] = std::minmax_element(terms[a].begin(), terms[a].end());
          lo[a] = *mn;
          hi[a] = *mx;
        }
        const double tmin = lo[0] + lo[1] + lo[2] + lo[3];
        const double tmax = hi[0] + hi[1] + hi[2] + hi[3];
        const double gap = t_target < tmin ? tmin - t_target : (t_target > tmax ? t_target - tmax : 0);
        best_residual = std::min(best_residual, gap);
        if (gap > band) continue;
      }

      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t i, std::size_t j) { return bias[i] > bias[j]; });
      const std::vector<double> sums23 = sorted_pair_sums(terms[2], terms[3]);
      const std::vector<double> sums01 = sorted_pair_sums(terms[0], terms[1]);
      for (int a = 0; a < 4; ++a) {
        // Remaining three preparations: one scanned, two as sorted pair sums.
        const std::vector<double> &pairs = a < 2 ? sums23 : sums01;
        const std::vector<double> &single = terms[a == 0 ? 1 : a == 1 ? 0 : a == 2 ? 3 : 2];
        for (const std::size_t s : order) {
          if (bias[s] <= best) break;
          const double lo = t_target - band - terms[a][s];
          const double hi = t_target + band - terms[a][s];
          if (triple_sum_in_range(single, pairs, lo, hi)) {
            best = bias[s];
            best_residual = 0;
            break;
          }
        }
      }
    }
  }
  if (best < 0) {
    throw InfeasibleError("no grid device within band " + std::to_string(band) + " of T = " +
                              std::to_string(t_target),
                          best_residual);
  }
  return best;
}

}  // namespace sdirng
