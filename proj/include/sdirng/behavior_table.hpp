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

#include <string>

#include <Eigen/Dense>

#include "sdirng/errors.hpp"
#include "sdirng/qubit.hpp"

namespace sdirng {

template <typename Scalar>
using TableMatrix = Eigen::Matrix<Scalar, 4, 2>;

/// E(a, y) = P(b=0 | a, y). Rows a = 00, 01, 10, 11; columns y = 0, 1.
template <typename Scalar>
class BehaviorTable {
 public:
  explicit BehaviorTable(const TableMatrix<Scalar> &e) : e_(e) {
    for (int a = 0; a < 4; ++a) {
      for (int y = 0; y < 2; ++y) {
        if (!(e_(a, y) >= Scalar(0) && e_(a, y) <= Scalar(1))) {
          throw DomainError("behavior table entry (" + std::to_string(a) + "," +
                            std::to_string(y) + ") = " + std::to_string(double(e_(a, y))) +
                            " is not a probability");
        }
      }
    }
  }

  Scalar operator()(int a, int y) const { return e_(a, y); }
  /// P(b | a, y).
  Scalar probability(int b, int a, int y) const { return b == 0 ? e_(a, y) : Scalar(1) - e_(a, y); }
  const TableMatrix<Scalar> &matrix() const { return e_; }

 private:
  TableMatrix<Scalar> e_;
};

template <typename Scalar>
BehaviorTable<Scalar> behavior_table(const Device<Scalar> &d) {
  TableMatrix<Scalar> e;
  for (int a = 0; a < 4; ++a) {
    for (int y = 0; y < 2; ++y) e(a, y) = born_probability(d.preparations[a], d.measurements[y], 0);
  }
  return BehaviorTable<Scalar>(e);
}

using Table = BehaviorTable<double>;

}  // namespace sdirng
