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

#ifndef KCBS_NV_SYSTEM_HPP
#define KCBS_NV_SYSTEM_HPP

#include <array>

#include "kcbs/qutrit.hpp"

namespace kcbs {

/// Ground-state spin Hamiltonian parameters, field along the NV axis.
/// Frequencies in MHz, field in gauss.
struct NvParams {
  double zero_field_splitting_mhz = 2870.0;
  double gamma_e_mhz_per_gauss = 2.8025;
  double field_gauss = 482.7;
  double hyperfine_axial_mhz = 2.2;
  int nuclear_projection = 1;  // m_I
  bool nuclear_term_enabled = false;
  /// Nuclear Zeeman energy of the fixed m_I manifold; common to all three electron levels.
  double nuclear_zeeman_offset_mhz = 0.0;

  /// Throws InvalidInput if D <= 0, B < 0 or m_I is not in {-1, 0, 1}.
  void validate() const;
};

/// Measured ODMR peaks used as reference values.
inline constexpr double kMeasuredMinusTransitionMhz = 1518.6;
inline constexpr double kMeasuredPlusTransitionMhz = 4221.7;

struct LevelStructure {
  std::array<double, 3> energies_mhz{};  // indexed by ZeemanLevel: +1, 0, -1
  double f_minus_mhz = 0.0;              // |0> <-> |-1>
  double f_plus_mhz = 0.0;               // |0> <-> |+1>

  [[nodiscard]] double energy(ZeemanLevel level) const { return energies_mhz[static_cast<int>(level)]; }
};

/// Secular level energies E(m) = D m^2 + gamma_e B m [+ A_z m m_I] [+ nuclear offset].
///
/// The Zeeman term lowers |-1> for positive field so that the |0> <-> |-1>
/// line is the lower-frequency one.
LevelStructure energy_levels(const NvParams& p);

/// One microwave drive in the rotating frame.
struct Drive {
  double rabi_mhz = 0.0;
  double phase_rad = 0.0;
  double detuning_mhz = 0.0;
};

/// Rotating-wave Hamiltonian in MHz (cyclic units), Zeeman basis:
///   (W1/2)(e^{i p1}|0><-1| + h.c.) + (W2/2)(e^{i p2}|0><+1| + h.c.)
///   + D1 |-1><-1| + D2 |+1><+1|.
/// `drive1` addresses |0> <-> |-1>, `drive2` addresses |0> <-> |+1>.
///
/// Drive detunings are relative to the bare transitions (nuclear term off).
/// When `p.nuclear_term_enabled`, the hyperfine shift of each level is added
/// on top, modelling carriers tuned to the bare lines.
HermitianOp rotating_frame_hamiltonian(const NvParams& p, const Drive& drive1, const Drive& drive2);

/// Level shifts (MHz) of |+1> and |-1> caused by the axial hyperfine term,
/// or zero when the nuclear term is disabled.
std::array<double, 2> hyperfine_detunings(const NvParams& p);

}  // namespace kcbs

#endif  // KCBS_NV_SYSTEM_HPP
