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

#include <stdexcept>
#include <string>

namespace sdirng {

/// An argument lies outside the domain of an operation (angle ranges,
/// probabilities, bit values, inconsistent lengths).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No admissible point satisfies the witness constraint.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string &what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// Round statistics are insufficient for estimation (e.g. an empty cell).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observed statistics contradict the qubit assumption.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `location` names the line and/or field.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &location, const std::string &message)
      : std::runtime_error(location + ": " + message), location_(location) {}
  const std::string &location() const { return location_; }

 private:
  std::string location_;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sdirng
