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

// Qubit states, binary projective measurements and the Born rule.
//
// States and measurements are stored as Bloch angles (theta, eta) with
// theta in [0, pi] and eta in [0, 2pi). Matrices are derived on demand.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "sdirng/errors.hpp"

namespace sdirng {

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using AmplitudePair = Eigen::Matrix<Complex<Scalar>, 2, 1>;
template <typename Scalar>
using Matrix2c = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

namespace detail {

template <typename Scalar>
void check_angles(Scalar theta, Scalar eta, const char *what) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (!(theta >= Scalar(0) && theta <= pi)) {
    throw DomainError(std::string(what) + ": theta=" + std::to_string(double(theta)) +
                      " outside [0, pi]");
  }
  if (!(eta >= Scalar(0) && eta < Scalar(2) * pi)) {
    throw DomainError(std::string(what) + ": eta=" + std::to_string(double(eta)) +
                      " outside [0, 2pi)");
  }
}

}  // namespace detail

/// (cos(theta/2), e^{i eta} sin(theta/2)).
template <typename Scalar>
AmplitudePair<Scalar> state_from_angles(Scalar theta, Scalar eta) {
  detail::check_angles(theta, eta, "state_from_angles");
  AmplitudePair<Scalar> v;
  v(0) = Complex<Scalar>(std::cos(theta / 2), 0);
  v(1) = std::polar(std::sin(theta / 2), eta);
  return v;
}

/// A pure qubit state |phi><phi| given by its Bloch angles.
template <typename Scalar>
class PureQubit {
 public:
  PureQubit(Scalar theta, Scalar eta) : theta_(theta), eta_(eta) {
    detail::check_angles(theta, eta, "PureQubit");
  }

  Scalar theta() const { return theta_; }
  Scalar eta() const { return eta_; }

  AmplitudePair<Scalar> amplitudes() const { return state_from_angles(theta_, eta_); }

  Matrix2c<Scalar> density() const {
    const AmplitudePair<Scalar> v = amplitudes();
    return v * v.adjoint();
  }

  Vector3<Scalar> bloch() const {
    return {std::sin(theta_) * std::cos(eta_), std::sin(theta_) * std::sin(eta_),
            std::cos(theta_)};
  }

  friend bool operator==(const PureQubit &, const PureQubit &) = default;

 private:
  Scalar theta_;
  Scalar eta_;
};

/// Two-outcome projective measurement {P0, P1 = I - P0} with P0 rank one.
/// When `fixed_computational` is set, P0 = |0><0| regardless of the angles.
template <typename Scalar>
class BinaryMeasurement {
 public:
  BinaryMeasurement(Scalar theta, Scalar eta, bool fixed_computational = false)
      : theta_(theta), eta_(eta), fixed_computational_(fixed_computational) {
    detail::check_angles(theta, eta, "BinaryMeasurement");
  }

  static BinaryMeasurement computational() { return BinaryMeasurement(0, 0, true); }

  Scalar theta() const { return theta_; }
  Scalar eta() const { return eta_; }
  bool fixed_computational() const { return fixed_computational_; }

  /// Bloch vector of the b=0 projector.
  Vector3<Scalar> bloch() const {
    if (fixed_computational_) return {0, 0, 1};
    return {std::sin(theta_) * std::cos(eta_), std::sin(theta_) * std::sin(eta_),
            std::cos(theta_)};
  }

  friend bool operator==(const BinaryMeasurement &, const BinaryMeasurement &) = default;

 private:
  Scalar theta_;
  Scalar eta_;
  bool fixed_computational_;
};

template <typename Scalar>
Matrix2c<Scalar> projector_p0(const BinaryMeasurement<Scalar> &m) {
  Matrix2c<Scalar> p;
  if (m.fixed_computational()) {
    p << Scalar(1), Scalar(0), Scalar(0), Scalar(0);
    return p;
  }
  const Scalar c = std::cos(m.theta() / 2);
  const Scalar s = std::sin(m.theta() / 2);
  const Scalar half_sin = std::sin(m.theta()) / 2;
  p(0, 0) = c * c;
  p(0, 1) = std::polar(half_sin, -m.eta());
  p(1, 0) = std::polar(half_sin, m.eta());
  p(1, 1) = s * s;
  return p;
}

template <typename Scalar>
Matrix2c<Scalar> projector(const BinaryMeasurement<Scalar> &m, int b) {
  if (b != 0 && b != 1) throw DomainError("outcome bit must be 0 or 1, got " + std::to_string(b));
  const Matrix2c<Scalar> p0 = projector_p0(m);
  return b == 0 ? p0 : Matrix2c<Scalar>(Matrix2c<Scalar>::Identity() - p0);
}

namespace detail {

template <typename Scalar>
Scalar clamp_probability(Scalar p) {
  return p < Scalar(0) ? Scalar(0) : (p > Scalar(1) ? Scalar(1) : p);
}

}  // namespace detail

/// tr(rho M^b) for an arbitrary (not necessarily canonical) amplitude pair.
template <typename Scalar>
Scalar born_probability(const AmplitudePair<Scalar> &psi, const BinaryMeasurement<Scalar> &m,
                        int b) {
  const Matrix2c<Scalar> rho = psi * psi.adjoint();
  return detail::clamp_probability((rho * projector(m, b)).trace().real());
}

template <typename Scalar>
Scalar born_probability(const PureQubit<Scalar> &state, const BinaryMeasurement<Scalar> &m,
                        int b) {
  return detail::clamp_probability((state.density() * projector(m, b)).trace().real());
}

/// Four preparations indexed by a = 00, 01, 10, 11 and two measurements
/// indexed by y = 0, 1.
template <typename Scalar>
struct Device {
  std::array<PureQubit<Scalar>, 4> preparations;
  std::array<BinaryMeasurement<Scalar>, 2> measurements;

  friend bool operator==(const Device &, const Device &) = default;
};

using Qubit = PureQubit<double>;
using Measurement = BinaryMeasurement<double>;
using QubitDevice = Device<double>;

}  // namespace sdirng
