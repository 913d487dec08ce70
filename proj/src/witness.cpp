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

namespace sdirng {

Table strategy_table(DeterministicStrategy s) {
  if (s.encoding > 0xF || s.decoding > 0xF) throw DomainError("strategy tables are 4 bits wide");
  TableMatrix<double> e;
  for (int a = 0; a < 4; ++a) {
    const int m = (s.encoding >> a) & 1;
    for (int y = 0; y < 2; ++y) {
      const int b = (s.decoding >> (2 * y + m)) & 1;
      e(a, y) = b == 0 ? 1.0 : 0.0;
    }
  }
  return Table(e);
}

std::vector<DeterministicStrategy> all_deterministic_strategies() {
  std::vector<DeterministicStrategy> out;
  out.reserve(256);
  for (std::uint8_t enc = 0; enc < 16; ++enc) {
    for (std::uint8_t dec = 0; dec < 16; ++dec) out.push_back({enc, dec});
  }
  return out;
}

}  // namespace sdirng
