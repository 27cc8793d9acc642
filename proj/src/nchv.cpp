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

#include "kcbs/nchv.hpp"

#include <cmath>
#include <limits>

#include "kcbs/errors.hpp"

namespace kcbs {

Assignment::Assignment(std::uint8_t code) : code_(code) {
  if (code >= kCount) throw InvalidInput("assignment code must be in 0..31");
}

Assignment::Assignment(const std::array<int, 5>& values) {
  for (int i = 0; i < 5; ++i) {
    if (values[i] != 0 && values[i] != 1) throw InvalidInput("assignment values must be 0 or 1");
    code_ |= static_cast<std::uint8_t>(values[i] << i);
  }
}

std::array<int, 5> Assignment::values() const {
  std::array<int, 5> v{};
  for (int i = 0; i < 5; ++i) v[i] = (*this)[i];
  return v;
}

Assignment Assignment::rotated(int k) const {
  std::array<int, 5> v{};
  for (int i = 0; i < 5; ++i) v[((i + k) % 5 + 5) % 5] = (*this)[i];
  return Assignment(v);
}

std::array<Assignment, Assignment::kCount> all_assignments() {
  std::array<Assignment, Assignment::kCount> out;
  for (int c = 0; c < Assignment::kCount; ++c) out[c] = Assignment(static_cast<std::uint8_t>(c));
  return out;
}

int kcbs_classical_value(Assignment a) {
  int value = 0;
  for (int i = 0; i < 5; ++i) value += a[i] - a[i] * a[(i + 1) % 5];
  return value;
}

bool is_exclusive(Assignment a) {
  for (int i = 0; i < 5; ++i) {
    if (a[i] * a[(i + 1) % 5] != 0) return false;
  }
  return true;
}

EnumerationResult max_kcbs_over_assignments() {
  EnumerationResult r{std::numeric_limits<int>::min(), {}};
  for (Assignment a : all_assignments()) {
    const int v = kcbs_classical_value(a);
    if (v > r.value) {
      r.value = v;
      r.argmax.clear();
    }
    if (v == r.value) r.argmax.push_back(a);
  }
  return r;
}

int min_kcbs_over_assignments() {
  int best = std::numeric_limits<int>::max();
  for (Assignment a : all_assignments()) best = std::min(best, kcbs_classical_value(a));
  return best;
}

std::vector<Assignment> exclusive_assignments() {
  std::vector<Assignment> out;
  for (Assignment a : all_assignments()) {
    if (is_exclusive(a)) out.push_back(a);
  }
  return out;
}

EnumerationResult max_exclusive_sum() {
  EnumerationResult r{std::numeric_limits<int>::min(), {}};
  for (Assignment a : exclusive_assignments()) {
    int s = 0;
    for (int i = 0; i < 5; ++i) s += a[i];
    if (s > r.value) {
      r.value = s;
      r.argmax.clear();
    }
    if (s == r.value) r.argmax.push_back(a);
  }
  return r;
}

HvDistribution::HvDistribution(std::span<const double> weights) {
  if (weights.size() != Assignment::kCount) throw InvalidInput("distribution needs exactly 32 weights");
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) {
      throw InvalidInput("distribution weights must be finite and non-negative");
    }
    weights_[k] = weights[k];
    total += weights[k];
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("distribution weights must sum to 1");
}

HvDistribution HvDistribution::point_mass(Assignment a) {
  std::array<double, Assignment::kCount> w{};
  w[a.code()] = 1.0;
  return HvDistribution(w);
}

HvDistribution HvDistribution::uniform() {
  std::array<double, Assignment::kCount> w{};
  w.fill(1.0 / Assignment::kCount);
  return HvDistribution(w);
}

double mixture_value(const HvDistribution& d) {
  double v = 0.0;
  for (Assignment a : all_assignments()) v += d.weights()[a.code()] * kcbs_classical_value(a);
  return v;
}

}  // namespace kcbs
