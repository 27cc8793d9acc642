// Copyright 2026 The kcbs-nv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KCBS_ERRORS_HPP
#define KCBS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kcbs {

/// Raised when an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative numerical routine fails to meet its contract.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pulse synthesis did not reach the requested fidelity.
class SynthesisFailure : public NumericalFailure {
 public:
  SynthesisFailure(const std::string& what, double best_fidelity)
      : NumericalFailure(what), best_fidelity_(best_fidelity) {}

  [[nodiscard]] double best_fidelity() const noexcept { return best_fidelity_; }

 private:
  double best_fidelity_;
};

/// Malformed configuration or input file. `location` names the offending field or line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(location) {}

  [[nodiscard]] const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace kcbs

#endif  // KCBS_ERRORS_HPP
