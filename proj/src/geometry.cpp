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

#include "kcbs/geometry.hpp"

#include <cmath>
#include <numbers>

namespace kcbs {

double PentagramSet::max_cyclic_dot() const {
  double worst = 0.0;
  for (int i = 0; i < kCycleLength; ++i) {
    worst = std::max(worst, std::abs(directions[i].dot(directions[next_index(i)])));
  }
  return worst;
}

PentagramSet build_pentagram() {
  PentagramSet set;
  set.theta = std::acos(std::pow(5.0, -0.25));
  set.psi_axis = Direction(0.0, 0.0, 1.0);
  for (int n = 0; n < kCycleLength; ++n) {
    set.phis[n] = std::fmod(0.8 * n * std::numbers::pi, 2.0 * std::numbers::pi);
    set.directions[n] = Direction::spherical(set.theta, set.phis[n]);
  }
  return set;
}

PentagramSet rotate(const PentagramSet& set, const Eigen::Matrix3d& rotation) {
  if ((rotation * rotation.transpose() - Eigen::Matrix3d::Identity()).norm() > 1e-12 ||
      std::abs(rotation.determinant() - 1.0) > 1e-12) {
    throw InvalidInput("rotate: matrix is not a proper rotation");
  }
  PentagramSet out = set;
  for (auto& d : out.directions) d = Direction::normalized(rotation * d.vector());
  out.psi_axis = Direction::normalized(rotation * set.psi_axis.vector());
  return out;
}

QutritState psi_state(const PentagramSet& set) { return neutrally_polarized_state(set.psi_axis); }

KcbsPrediction quantum_prediction(const PentagramSet& set, const DensityMatrix& rho) {
  const Matrix3cd r = rho.matrix_in(Basis::Cartesian);
  std::array<Vector3cd, kCycleLength> kets;
  for (int i = 0; i < kCycleLength; ++i) {
    kets[i] = neutrally_polarized_state(set.directions[i]).amplitudes();
  }

  KcbsPrediction p;
  double singles = 0.0;
  double pairs = 0.0;
  for (int i = 0; i < kCycleLength; ++i) {
    const Vector3cd& a = kets[i];
    const Vector3cd& b = kets[next_index(i)];
    p.single_expectations[i] = a.dot(r * a).real();
    p.pair_correlations[i] = (a.dot(r * b) * b.dot(a)).real();
    singles += p.single_expectations[i];
    pairs += p.pair_correlations[i];
  }
  p.kcbs_value = singles - pairs;
  return p;
}

KcbsPrediction quantum_prediction(const PentagramSet& set, const QutritState& state) {
  return quantum_prediction(set, DensityMatrix::pure(state));
}

}  // namespace kcbs
