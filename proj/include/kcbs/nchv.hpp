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

#ifndef KCBS_NCHV_HPP
#define KCBS_NCHV_HPP

// Noncontextual hidden-variable bounds on the five-cycle, by enumeration.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace kcbs {

/// Deterministic {0,1} outcomes a_1..a_5. Bit i of `code()` is a_{i+1}.
class Assignment {
 public:
  static constexpr int kCount = 32;

  Assignment() = default;
  explicit Assignment(std::uint8_t code);
  explicit Assignment(const std::array<int, 5>& values);

  [[nodiscard]] int operator[](int i) const { return (code_ >> i) & 1; }
  [[nodiscard]] std::uint8_t code() const { return code_; }
  [[nodiscard]] std::array<int, 5> values() const;

  /// Shifts every index by `k` positions around the cycle.
  [[nodiscard]] Assignment rotated(int k) const;

  friend bool operator==(Assignment, Assignment) = default;

 private:
  std::uint8_t code_ = 0;
};

/// All 32 assignments in code order 0..31.
std::array<Assignment, Assignment::kCount> all_assignments();

/// sum a_i - sum a_i a_{i+1}, cyclic.
int kcbs_classical_value(Assignment a);

/// True when no two cyclic neighbours are both 1.
bool is_exclusive(Assignment a);

struct EnumerationResult {
  int value = 0;
  std::vector<Assignment> argmax;  // in code order
};

EnumerationResult max_kcbs_over_assignments();
int min_kcbs_over_assignments();

/// Maximum of sum a_i under cyclic exclusivity (independence number of C5).
EnumerationResult max_exclusive_sum();

/// Assignments satisfying cyclic exclusivity, in code order.
std::vector<Assignment> exclusive_assignments();

/// Convex mixture over the 32 assignments, indexed by code.
class HvDistribution {
 public:
  explicit HvDistribution(std::span<const double> weights);

  static HvDistribution point_mass(Assignment a);
  static HvDistribution uniform();

  [[nodiscard]] const std::array<double, Assignment::kCount>& weights() const { return weights_; }

 private:
  std::array<double, Assignment::kCount> weights_{};
};

double mixture_value(const HvDistribution& d);

}  // namespace kcbs

#endif  // KCBS_NCHV_HPP
