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

#ifndef KCBS_ANALYSIS_HPP
#define KCBS_ANALYSIS_HPP

#include <array>
#include <cmath>
#include <span>
#include <string>

#include "kcbs/geometry.hpp"

namespace kcbs {

inline constexpr double kClassicalBound = 2.0;
inline const double kQuantumIdeal = std::sqrt(5.0);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Sum of five estimates, errors combined in quadrature.
Estimate kcbs_sum(std::span<const Estimate> estimates);

/// (sum - 2) / error. Throws InvalidInput if the error is not positive.
double sigma_violation(const Estimate& sum);

/// Mean squared overlap of neighbouring measurement states.
double epsilon(std::span<const double> overlaps);

/// sum L_i - sqrt(5 eps sum L_i L_{i+1}), cyclic.
double robust_bound(std::span<const double> li, double eps);

/// |<l_i|rho|l_{i+1}>| <= sqrt(<L_i><L_{i+1}>) for all five cyclic pairs,
/// within `tol`.
bool cauchy_schwarz_check(const DensityMatrix& rho, const PentagramSet& set, double tol = 1e-10);

struct ExperimentReport {
  std::array<Estimate, kCycleLength> li{};
  std::array<Estimate, kCycleLength> overlaps{};
  Estimate epsilon{};
  Estimate sum{};
  double sigma = 0.0;  // +inf when sum.error == 0
  double robust_bound = 0.0;
  double classical_bound = kClassicalBound;
  double quantum_ideal = kQuantumIdeal;

  [[nodiscard]] bool violates() const { return robust_bound > classical_bound; }
};

/// Builds the report. Overlap estimates are clipped at 0 before averaging
/// into epsilon (a squared modulus cannot be negative); the epsilon error is
/// the quadrature error of the mean and is not propagated into the bound.
ExperimentReport make_report(std::span<const Estimate> li, std::span<const Estimate> overlaps);

/// JSON with fields li, li_err, overlaps, overlaps_err, epsilon, epsilon_err,
/// sum, sum_err, sigma, robust_bound, classical_bound, quantum_ideal.
/// Non-finite numbers are written as null.
std::string to_json(const ExperimentReport& r, int indent = 2);

}  // namespace kcbs

#endif  // KCBS_ANALYSIS_HPP
