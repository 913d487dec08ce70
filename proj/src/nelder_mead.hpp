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

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace sdirng::detail {

template <int N>
struct NelderMeadResult {
  Eigen::Matrix<double, N, 1> x;
  double f;
  int iterations;
};

// Minimizes f with the dimension-adaptive coefficients of Gao and Han.
// Stops when the spread of simplex values drops below ftol or after
// max_iterations.
template <int N, typename F>
NelderMeadResult<N> nelder_mead(F &&f, const Eigen::Matrix<double, N, 1> &x0, double step,
                                double ftol, int max_iterations) {
  using Vec = Eigen::Matrix<double, N, 1>;
  constexpr double n = N;
  constexpr double alpha = 1.0;
  constexpr double gamma = 1.0 + 2.0 / n;
  constexpr double rho = 0.75 - 1.0 / (2.0 * n);
  constexpr double sigma = 1.0 - 1.0 / n;

  std::array<Vec, N + 1> x;
  std::array<double, N + 1> fx;
  x[0] = x0;
  fx[0] = f(x0);
  for (int i = 0; i < N; ++i) {
    x[i + 1] = x0;
    x[i + 1](i) += step;
    fx[i + 1] = f(x[i + 1]);
  }
  std::array<int, N + 1> order;

  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return fx[i] < fx[j]; });
    const int best = order[0];
    const int worst = order[N];
    const int second_worst = order[N - 1];
    if (fx[worst] - fx[best] <= ftol) break;

    Vec centroid = Vec::Zero();
    for (int k = 0; k < N; ++k) centroid += x[order[k]];
    centroid /= n;

    const Vec xr = centroid + alpha * (centroid - x[worst]);
    const double fr = f(xr);
    if (fr < fx[best]) {
      const Vec xe = centroid + gamma * (xr - centroid);
      const double fe = f(xe);
      if (fe < fr) {
        x[worst] = xe;
        fx[worst] = fe;
      } else {
        x[worst] = xr;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[second_worst]) {
      x[worst] = xr;
      fx[worst] = fr;
      continue;
    }
    const bool outside = fr < fx[worst];
    const Vec xc = outside ? Vec(centroid + rho * (xr - centroid))
                           : Vec(centroid - rho * (centroid - x[worst]));
    const double fc = f(xc);
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = xc;
      fx[worst] = fc;
      continue;
    }
    for (int k = 1; k <= N; ++k) {
      const int i = order[k];
      x[i] = x[best] + sigma * (x[i] - x[best]);
      fx[i] = f(x[i]);
    }
  }
  const int best = static_cast<int>(std::min_element(fx.begin(), fx.end()) - fx.begin());
  return {x[best], fx[best], it};
}

// Repeats nelder_mead from the incumbent until a restart no longer improves
// by more than ftol or the iteration budget is spent.
template <int N, typename F>
NelderMeadResult<N> nelder_mead_restarts(F &&f, const Eigen::Matrix<double, N, 1> &x0,
                                         double step, double ftol, int max_iterations) {
  NelderMeadResult<N> result = nelder_mead<N>(f, x0, step, ftol, max_iterations);
  int used = result.iterations;
  while (used < max_iterations) {
    NelderMeadResult<N> again = nelder_mead<N>(f, result.x, step, ftol, max_iterations - used);
    used += std::max(1, again.iterations);
    const bool improved = again.f < result.f - ftol;
    if (again.f < result.f) result = {again.x, again.f, 0};
    if (!improved) break;
  }
  result.iterations = used;
  return result;
}

}  // namespace sdirng::detail
