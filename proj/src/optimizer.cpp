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

#include "sdirng/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "nelder_mead.hpp"
#include "parallel.hpp"
#include "sdirng/behavior_table.hpp"
#include "sdirng/errors.hpp"
#include "sdirng/random.hpp"
#include "sdirng/witness.hpp"

namespace sdirng {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

constexpr std::array<std::array<double, 2>, 4> kSigns{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

double wrap_eta(double eta) {
  double e = std::fmod(eta, kTwoPi);
  if (e < 0) e += kTwoPi;
  if (e >= kTwoPi) e = 0;
  return e;
}

// Folds theta into [0, pi]; a fold past a pole moves eta by pi.
std::pair<double, double> canonical_angles(double theta, double eta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t > kPi) {
    t = kTwoPi - t;
    eta += kPi;
  }
  return {std::min(t, kPi), wrap_eta(eta)};
}

Eigen::Vector3d bloch(double theta, double eta) {
  const double s = std::sin(theta);
  return {s * std::cos(eta), s * std::sin(eta), std::cos(theta)};
}

}  // namespace

ParameterVector::ParameterVector() : values_(RawParameters::Zero()) {}

ParameterVector::ParameterVector(const RawParameters &values) : values_(values) {
  // Routes through the range checks of the qubit types.
  (void)to_device();
}

ParameterVector ParameterVector::canonical(const RawParameters &raw) {
  RawParameters v;
  for (int k = 0; k < 5; ++k) {
    const auto [theta, eta] = canonical_angles(raw(2 * k), raw(2 * k + 1));
    v(2 * k) = theta;
    v(2 * k + 1) = eta;
  }
  return ParameterVector(v);
}

ParameterVector ParameterVector::from_device(const QubitDevice &d) {
  const Measurement &m0 = d.measurements[0];
  if (!m0.fixed_computational() && m0.theta() != 0) {
    throw DomainError("measurement y=0 must be the computational basis");
  }
  RawParameters v;
  for (int a = 0; a < 4; ++a) {
    v(2 * a) = d.preparations[a].theta();
    v(2 * a + 1) = d.preparations[a].eta();
  }
  const Measurement &m1 = d.measurements[1];
  v(8) = m1.fixed_computational() ? 0.0 : m1.theta();
  v(9) = m1.fixed_computational() ? 0.0 : m1.eta();
  return ParameterVector(v);
}

QubitDevice ParameterVector::to_device() const {
  const auto &v = values_;
  return QubitDevice{
      {Qubit(v(0), v(1)), Qubit(v(2), v(3)), Qubit(v(4), v(5)), Qubit(v(6), v(7))},
      {Measurement::computational(), Measurement(v(8), v(9))}};
}

bool lexicographically_less(const ParameterVector &x, const ParameterVector &y) {
  const auto &a = x.values();
  const auto &b = y.values();
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

void OptimizationSettings::validate() const {
  if (starts < 1) throw DomainError("starts must be at least 1");
  if (penalty_weight_schedule.empty()) throw DomainError("penalty schedule is empty");
  for (std::size_t i = 0; i < penalty_weight_schedule.size(); ++i) {
    if (!(penalty_weight_schedule[i] > 0)) throw DomainError("penalty weights must be positive");
    if (i > 0 && !(penalty_weight_schedule[i] > penalty_weight_schedule[i - 1])) {
      throw DomainError("penalty weights must be strictly increasing");
    }
  }
  if (!(constraint_tolerance > 0)) throw DomainError("constraint_tolerance must be positive");
  if (!(convergence_tolerance > 0)) throw DomainError("convergence_tolerance must be positive");
  if (max_iterations < 1) throw DomainError("max_iterations must be at least 1");
  if (threads < 0) throw DomainError("threads must be non-negative");
}

namespace detail {

FastEvaluation fast_evaluate(const RawParameters &x) {
  const Eigen::Vector3d m1 = bloch(x(8), x(9));
  double t = 0;
  double bias = 0;
  for (int a = 0; a < 4; ++a) {
    const Eigen::Vector3d r = bloch(x(2 * a), x(2 * a + 1));
    const double z = r.z();
    const double w = r.dot(m1);
    t += 0.5 * (kSigns[a][0] * z + kSigns[a][1] * w);
    bias = std::max({bias, std::abs(z), std::abs(w)});
  }
  return {t, 0.5 * (1 + std::min(bias, 1.0))};
}

RawParameters witness_gradient(const RawParameters &x) {
  const double st = std::sin(x(8)), ct = std::cos(x(8));
  const double se = std::sin(x(9)), ce = std::cos(x(9));
  const Eigen::Vector3d m1(st * ce, st * se, ct);
  const Eigen::Vector3d dm1_dtheta(ct * ce, ct * se, -st);
  const Eigen::Vector3d dm1_deta(-st * se, st * ce, 0);
  const Eigen::Vector3d z(0, 0, 1);

  RawParameters g = RawParameters::Zero();
  for (int a = 0; a < 4; ++a) {
    const double sa = std::sin(x(2 * a)), ca = std::cos(x(2 * a));
    const double sea = std::sin(x(2 * a + 1)), cea = std::cos(x(2 * a + 1));
    const Eigen::Vector3d r(sa * cea, sa * sea, ca);
    const Eigen::Vector3d dr_dtheta(ca * cea, ca * sea, -sa);
    const Eigen::Vector3d dr_deta(-sa * sea, sa * cea, 0);
    const Eigen::Vector3d v = kSigns[a][0] * z + kSigns[a][1] * m1;
    g(2 * a) = 0.5 * dr_dtheta.dot(v);
    g(2 * a + 1) = 0.5 * dr_deta.dot(v);
    g(8) += 0.5 * kSigns[a][1] * r.dot(dm1_dtheta);
    g(9) += 0.5 * kSigns[a][1] * r.dot(dm1_deta);
  }
  return g;
}

}  // namespace detail

namespace {

using detail::fast_evaluate;

struct Projection {
  RawParameters x;
  double residual;
};

// Newton steps along grad T onto the level set T = t. Near the maximum of T
// the gradient vanishes and convergence slows to linear; the residual left
// over is reported, not hidden.
Projection project_onto_level(RawParameters x, double t) {
  double g = fast_evaluate(x).t - t;
  for (int it = 0; it < 60 && std::abs(g) > 1e-13; ++it) {
    const RawParameters grad = detail::witness_gradient(x);
    const double n2 = grad.squaredNorm();
    if (n2 < 1e-28) break;
    RawParameters step = (-g / n2) * grad;
    const double norm = step.norm();
    if (norm > 0.5) step *= 0.5 / norm;
    x += step;
    g = fast_evaluate(x).t - t;
  }
  return {x, g};
}

struct StartOutcome {
  bool feasible = false;
  double p_guess = 0;
  double achieved_t = 0;
  double residual = std::numeric_limits<double>::infinity();
  ParameterVector params;
  std::vector<double> stage_residuals;
};

StartOutcome run_start(const RawParameters &x0, double t_target, const OptimizationSettings &s) {
  StartOutcome out;
  RawParameters x = x0;
  double step = 0.4;
  for (const double mu : s.penalty_weight_schedule) {
    auto penalized = [&](const RawParameters &v) {
      const auto e = fast_evaluate(v);
      const double g = e.t - t_target;
      return -e.p_guess + mu * g * g;
    };
    x = detail::nelder_mead_restarts<10>(penalized, x, step, s.convergence_tolerance,
                                         s.max_iterations)
            .x;
    out.stage_residuals.push_back(std::abs(fast_evaluate(x).t - t_target));
    step = 0.1;
  }

  // Restore feasibility, then climb p_guess on the constraint surface.
  const double tol = s.constraint_tolerance;
  const Projection restored = project_onto_level(x, t_target);
  auto on_surface = [&](const RawParameters &v) {
    const Projection p = project_onto_level(v, t_target);
    if (std::abs(p.residual) > tol) return 10.0 + std::abs(p.residual);
    return -fast_evaluate(p.x).p_guess;
  };
  const auto polished = detail::nelder_mead_restarts<10>(on_surface, restored.x, 0.05,
                                                         s.convergence_tolerance, s.max_iterations);
  RawParameters final_x = project_onto_level(polished.x, t_target).x;
  if (std::abs(fast_evaluate(final_x).t - t_target) > tol) final_x = restored.x;

  // Re-verify through the checked state/measurement algebra.
  out.params = ParameterVector::canonical(final_x);
  const Table table = behavior_table(out.params.to_device());
  out.achieved_t = witness_value(table);
  out.p_guess = guessing_probability(table);
  out.residual = std::abs(out.achieved_t - t_target);
  out.feasible = out.residual <= tol;
  return out;
}

RawParameters random_start(std::uint64_t seed, std::uint64_t k) {
  auto cur = CounterRng(seed, k).cursor();
  RawParameters x;
  for (int i = 0; i < 5; ++i) {
    x(2 * i) = kPi * cur.uniform();
    x(2 * i + 1) = kTwoPi * cur.uniform();
  }
  return x;
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

bool better(double p, const ParameterVector &x, double best_p, const ParameterVector &best_x) {
  if (p != best_p) return p > best_p;
  return lexicographically_less(x, best_x);
}

CurvePoint optimize_from(double t_target, const OptimizationSettings &s,
                         const std::vector<RawParameters> &starts, OptimizationTrace *trace) {
  const double bound = quantum_bound();
  if (std::abs(t_target) > bound + s.constraint_tolerance) {
    throw InfeasibleError("witness value " + std::to_string(t_target) +
                              " exceeds the qubit bound 2*sqrt(2)",
                          std::abs(t_target) - bound);
  }
  std::vector<StartOutcome> outcomes(starts.size());
  detail::parallel_for(starts.size(), resolve_threads(s.threads),
                       [&](std::size_t k) { outcomes[k] = run_start(starts[k], t_target, s); });

  int winner = -1;
  double best_residual = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const StartOutcome &o = outcomes[k];
    best_residual = std::min(best_residual, o.residual);
    if (!o.feasible) continue;
    if (winner < 0 || better(o.p_guess, o.params, outcomes[winner].p_guess, outcomes[winner].params)) {
      winner = static_cast<int>(k);
    }
  }
  if (winner < 0) {
    throw InfeasibleError("no start reached |T - " + std::to_string(t_target) +
                              "| <= " + std::to_string(s.constraint_tolerance) +
                              "; best residual " + std::to_string(best_residual),
                          best_residual);
  }
  const StartOutcome &w = outcomes[winner];
  if (trace) {
    trace->stage_residuals = w.stage_residuals;
    trace->winning_start = winner;
  }
  CurvePoint cp;
  cp.t_target = t_target;
  cp.p_guess = w.p_guess;
  cp.h_min = min_entropy(w.p_guess);
  cp.argmax_params = w.params;
  cp.achieved_t = w.achieved_t;
  return cp;
}

}  // namespace

CurvePoint maximize_guessing_at_t(double t_target, const OptimizationSettings &s,
                                  std::span<const ParameterVector> warm_starts,
                                  OptimizationTrace *trace) {
  s.validate();
  std::vector<RawParameters> starts;
  starts.reserve(s.starts + warm_starts.size());
  for (int k = 0; k < s.starts; ++k) starts.push_back(random_start(s.rng_seed, k));
  for (const ParameterVector &w : warm_starts) starts.push_back(w.values());
  return optimize_from(t_target, s, starts, trace);
}

std::vector<CurvePoint> sweep_curve(std::span<const double> t_grid, const OptimizationSettings &s,
                                    std::vector<SweepFailure> *failures) {
  s.validate();
  const double lo = classical_bound() - 1e-12;
  const double hi = quantum_bound() + 1e-12;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < lo || t_grid[i] > hi) {
      throw DomainError("curve grid values must lie in [2, 2*sqrt(2)], got " +
                        std::to_string(t_grid[i]));
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("curve grid must be ascending");
  }

  std::vector<CurvePoint> points;
  std::optional<ParameterVector> previous;
  for (const double t : t_grid) {
    try {
      std::span<const ParameterVector> warm;
      if (previous) warm = std::span<const ParameterVector>(&*previous, 1);
      points.push_back(maximize_guessing_at_t(t, s, warm));
      previous = points.back().argmax_params;
    } catch (const InfeasibleError &e) {
      if (!failures) throw;
      failures->push_back({t, e.what(), e.best_residual()});
    }
  }

  // The optimum is non-increasing in T; repair found values that are not.
  for (std::size_t i = points.size(); i-- > 1;) {
    CurvePoint &lower = points[i - 1];
    const CurvePoint &upper = points[i];
    if (lower.p_guess >= upper.p_guess) continue;
    try {
      const CurvePoint again =
          optimize_from(lower.t_target, s, {upper.argmax_params.values()}, nullptr);
      if (again.p_guess > lower.p_guess) lower = again;
    } catch (const InfeasibleError &) {
    }
    if (lower.p_guess < upper.p_guess) {
      lower.p_guess = upper.p_guess;
      lower.h_min = upper.h_min;
      lower.monotone_filled = true;
    }
  }
  return points;
}

std::vector<double> make_grid(double t_min, double t_max, double step) {
  if (!(step > 0)) throw DomainError("grid step must be positive");
  if (!(t_min <= t_max)) throw DomainError("grid needs t_min <= t_max");
  const auto n = static_cast<long>(std::floor((t_max - t_min) / step + 1e-9));
  std::vector<double> grid;
  for (long i = 0; i <= n; ++i) {
    grid.push_back(std::round((t_min + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  if (t_max - grid.back() > 1e-9) grid.push_back(t_max);
  return grid;
}

std::vector<double> default_curve_grid() { return make_grid(2.0, quantum_bound(), 0.02); }

WitnessExtremum maximize_witness(const OptimizationSettings &s, Sense sense) {
  s.validate();
  const double sign = sense == Sense::kMaximize ? 1.0 : -1.0;
  std::vector<WitnessExtremum> results(s.starts);
  detail::parallel_for(results.size(), resolve_threads(s.threads), [&](std::size_t k) {
    auto objective = [&](const RawParameters &v) { return -sign * fast_evaluate(v).t; };
    const auto r = detail::nelder_mead_restarts<10>(objective, random_start(s.rng_seed, k), 0.4,
                                                    s.convergence_tolerance, s.max_iterations);
    const ParameterVector params = ParameterVector::canonical(r.x);
    results[k] = {witness_value(behavior_table(params.to_device())), params};
  });
  WitnessExtremum best = results[0];
  for (std::size_t k = 1; k < results.size(); ++k) {
    if (better(sign * results[k].t, results[k].argmax, sign * best.t, best.argmax)) best = results[k];
  }
  return best;
}

}  // namespace sdirng
