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

#ifndef KCBS_TESTS_TEST_SUPPORT_HPP
#define KCBS_TESTS_TEST_SUPPORT_HPP

// Random generators for property tests.

#include <random>

#include "kcbs/qutrit.hpp"

namespace kcbs::testing {

inline Direction random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Direction::normalized(Eigen::Vector3d(g(rng), g(rng), g(rng)));
}

inline Vector3cd random_ket(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector3cd v;
  for (int k = 0; k < 3; ++k) v(k) = {g(rng), g(rng)};
  return v.normalized();
}

inline QutritState random_state(std::mt19937_64& rng, Basis basis = Basis::Zeeman) {
  return QutritState::normalized(random_ket(rng), basis);
}

/// Ginibre-ensemble mixed state.
inline DensityMatrix random_density(std::mt19937_64& rng, Basis basis = Basis::Zeeman) {
  std::normal_distribution<double> g;
  Matrix3cd a;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = {g(rng), g(rng)};
  }
  Matrix3cd rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(rho, basis);
}

inline HermitianOp random_hermitian(std::mt19937_64& rng, Basis basis = Basis::Zeeman) {
  std::normal_distribution<double> g;
  Matrix3cd a;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = {g(rng), g(rng)};
  }
  return HermitianOp(0.5 * (a + a.adjoint()), basis);
}

/// Uniformly random proper rotation.
inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  return q.toRotationMatrix();
}

}  // namespace kcbs::testing

#endif  // KCBS_TESTS_TEST_SUPPORT_HPP
