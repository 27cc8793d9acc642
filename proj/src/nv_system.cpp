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

#include "kcbs/nv_system.hpp"

#include <cmath>
#include <complex>

namespace kcbs {

void NvParams::validate() const {
  if (!(zero_field_splitting_mhz > 0.0)) throw InvalidInput("zero-field splitting must be positive");
  if (!(field_gauss >= 0.0)) throw InvalidInput("field magnitude must be non-negative");
  if (!std::isfinite(gamma_e_mhz_per_gauss) || !std::isfinite(hyperfine_axial_mhz)) {
    throw InvalidInput("NV parameters must be finite");
  }
  if (nuclear_projection < -1 || nuclear_projection > 1) throw InvalidInput("m_I must be -1, 0 or +1");
}

LevelStructure energy_levels(const NvParams& p) {
  p.validate();
  const double zeeman = p.gamma_e_mhz_per_gauss * p.field_gauss;
  const double hf = p.nuclear_term_enabled ? p.hyperfine_axial_mhz * p.nuclear_projection : 0.0;
  auto energy = [&](int m) {
    return p.zero_field_splitting_mhz * m * m + zeeman * m + hf * m + p.nuclear_zeeman_offset_mhz;
  };

  LevelStructure s;
  s.energies_mhz = {energy(+1), energy(0), energy(-1)};
  s.f_minus_mhz = energy(-1) - energy(0);
  s.f_plus_mhz = energy(+1) - energy(0);
  return s;
}

std::array<double, 2> hyperfine_detunings(const NvParams& p) {
  if (!p.nuclear_term_enabled) return {0.0, 0.0};
  const double hf = p.hyperfine_axial_mhz * p.nuclear_projection;
  return {+hf, -hf};
}

HermitianOp rotating_frame_hamiltonian(const NvParams& p, const Drive& drive1, const Drive& drive2) {
  using C = std::complex<double>;
  constexpr int kPlus = static_cast<int>(ZeemanLevel::Plus);
  constexpr int kZero = static_cast<int>(ZeemanLevel::Zero);
  constexpr int kMinus = static_cast<int>(ZeemanLevel::Minus);

  const auto [hf_plus, hf_minus] = hyperfine_detunings(p);

  Matrix3cd h = Matrix3cd::Zero();
  const C c1 = 0.5 * drive1.rabi_mhz * std::polar(1.0, drive1.phase_rad);
  const C c2 = 0.5 * drive2.rabi_mhz * std::polar(1.0, drive2.phase_rad);
  h(kZero, kMinus) = c1;
  h(kMinus, kZero) = std::conj(c1);
  h(kZero, kPlus) = c2;
  h(kPlus, kZero) = std::conj(c2);
  h(kMinus, kMinus) = drive1.detuning_mhz + hf_minus;
  h(kPlus, kPlus) = drive2.detuning_mhz + hf_plus;
  return HermitianOp(h, Basis::Zeeman);
}

}  // namespace kcbs
