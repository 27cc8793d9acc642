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

#ifndef KCBS_GEOMETRY_HPP
#define KCBS_GEOMETRY_HPP

#include <array>

#include "kcbs/qutrit.hpp"

namespace kcbs {

inline constexpr int kCycleLength = 5;

/// Cyclic successor on the five-cycle, zero based.
constexpr int next_index(int i) { return (i + 1) % kCycleLength; }

/// Five measurement directions on a cone around `psi_axis`, neighbours
/// orthogonal, plus the state axis they are measured against.
struct PentagramSet {
  std::array<Direction, kCycleLength> directions;
  Direction psi_axis;
  double theta = 0.0;
  std::array<double, kCycleLength> phis{};

  /// Largest |l_i . l_{i+1}| over the cycle.
  [[nodiscard]] double max_cyclic_dot() const;
};

/// Regular pentagram with psi along +z: cos(theta) = 5^{-1/4}, phi_n = 0.8 (n-1) pi mod 2 pi.
PentagramSet build_pentagram();

/// Applies a common proper rotation to every direction and to psi_axis.
PentagramSet rotate(const PentagramSet& set, const Eigen::Matrix3d& rotation);

/// Neutrally polarized state of the symmetry axis.
QutritState psi_state(const PentagramSet& set);

struct KcbsPrediction {
  std::array<double, kCycleLength> single_expectations{};
  std::array<double, kCycleLength> pair_correlations{};
  double kcbs_value = 0.0;
};

/// Ideal quantum values of <L_i> and <L_i L_{i+1}>.
///
/// The pair term is Re(<l_i|rho|l_{i+1}> <l_{i+1}|l_i>), which equals
/// <L_i L_{i+1}> for pure states and vanishes for orthogonal neighbours.
KcbsPrediction quantum_prediction(const PentagramSet& set, const DensityMatrix& rho);
KcbsPrediction quantum_prediction(const PentagramSet& set, const QutritState& state);

}  // namespace kcbs

#endif  // KCBS_GEOMETRY_HPP
