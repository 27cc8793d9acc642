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

#ifndef KCBS_PULSE_HPP
#define KCBS_PULSE_HPP

// Two-channel microwave programs for the NV qutrit: representation,
// state-preparation synthesis, inversion, and noisy evolution.
//
// Units: Rabi frequencies and detunings in MHz (cycles per microsecond),
// durations in microseconds, phases in radians. The 2*pi conversion to
// angular frequency happens only inside the propagators.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "kcbs/nv_system.hpp"
#include "kcbs/qutrit.hpp"

namespace kcbs {

enum class Channel { MW1, MW2 };  // MW1: |0> <-> |-1>, MW2: |0> <-> |+1>

struct Pulse {
  Channel channel = Channel::MW1;
  double rabi_mhz = 0.0;
  double phase_rad = 0.0;
  double duration_us = 0.0;
  double detuning_mhz = 0.0;

  /// Rotation angle 2*pi*rabi*duration.
  [[nodiscard]] double area() const;

  friend bool operator==(const Pulse&, const Pulse&) = default;
};

/// Square pulse of the given rotation angle.
Pulse pulse_with_area(Channel channel, double rabi_mhz, double area_rad, double phase_rad = 0.0);

struct Delay {
  double duration_us = 0.0;
  friend bool operator==(const Delay&, const Delay&) = default;
};

/// Hahn-type echo block: free evolution tau, ideal refocusing, free
/// evolution tau, ideal refocusing. The two delays are equal by
/// construction. Refocusing swaps |+1> and |-1>, so static level shifts
/// antisymmetric in m cancel exactly and the block is the identity in the
/// absence of noise.
struct Echo {
  double tau_us = 0.0;
  friend bool operator==(const Echo&, const Echo&) = default;
};

using SequenceElement = std::variant<Pulse, Delay, Echo>;

/// Elapsed time of one element (2*tau for an echo).
double element_duration(const SequenceElement& e);

class PulseSequence {
 public:
  PulseSequence() = default;
  PulseSequence(std::initializer_list<SequenceElement> elements);

  /// Throws InvalidInput for negative durations or Rabi frequencies.
  void push_back(const SequenceElement& e);
  void append(const PulseSequence& other);

  [[nodiscard]] const std::vector<SequenceElement>& elements() const { return elements_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] bool empty() const { return elements_.empty(); }
  [[nodiscard]] double total_duration_us() const;

  [[nodiscard]] auto begin() const { return elements_.begin(); }
  [[nodiscard]] auto end() const { return elements_.end(); }

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;

 private:
  std::vector<SequenceElement> elements_;
};

PulseSequence concat(PulseSequence a, const PulseSequence& b);

/// Phenomenological decoherence model.
///
/// Inhomogeneous broadening: a static field shift delta ~ N(0, detuning_sigma)
/// moves level m by m*delta, drawn once per ensemble member. Homogeneous
/// dephasing: every off-diagonal Zeeman element decays as exp(-t/t2).
struct NoiseParams {
  double t2_star_us = 35.0;
  double t2_us = 148.0;
  double detuning_sigma_mhz = 0.0;
  int ensemble_size = 64;

  static NoiseParams noiseless();
  void validate() const;
};

/// exp(-2 pi i H t) for a square pulse. `static_detuning_mhz` is the field
/// shift delta (level m moves by m*delta).
Matrix3cd pulse_unitary(const Pulse& p, double static_detuning_mhz = 0.0, const NvParams& nv = {});

/// Free precession for `duration_us` with no drive.
Matrix3cd free_unitary(double duration_us, double static_detuning_mhz = 0.0, const NvParams& nv = {});

/// Propagator of one element.
Matrix3cd element_unitary(const SequenceElement& e, double static_detuning_mhz = 0.0, const NvParams& nv = {});

/// Time-ordered product over the whole sequence, no dephasing.
Matrix3cd sequence_unitary(const PulseSequence& s, double static_detuning_mhz = 0.0, const NvParams& nv = {});

struct CompileOptions {
  double mw1_rabi_mhz = 10.0;
  double mw2_rabi_mhz = 10.0;
  double fidelity_target = 1.0 - 1e-9;
  int max_iterations = 60;
};

/// |<target| U(s) |0>|^2 with noiseless evolution.
double preparation_fidelity(const PulseSequence& s, const Direction& target, const NvParams& nv = {});

/// Synthesizes an MW1-then-MW2 program taking |0> to the neutrally polarized
/// state of `target`. Pulse areas and phases come from the analytic
/// two-level decomposition of the target's Zeeman amplitudes, then are
/// polished by Levenberg-Marquardt when the drive model makes the analytic
/// answer inexact (e.g. hyperfine detuning). Throws SynthesisFailure carrying
/// the best fidelity if the target cannot be reached.
PulseSequence compile_prep(const Direction& target, const CompileOptions& options = {}, const NvParams& nv = {});

/// Reverses element order and shifts every pulse phase by pi.
PulseSequence invert_sequence(const PulseSequence& s);

/// Static detunings of each ensemble member (MHz). All zero, and a single
/// member, when the broadening is zero.
std::vector<double> ensemble_detunings(const NoiseParams& noise, std::uint64_t seed);

/// Evolves each ensemble member through `s` starting from `rho0` (Zeeman
/// matrix). Returned matrices are per member, in member order.
std::vector<Matrix3cd> evolve_members(const PulseSequence& s, const Matrix3cd& rho0, const NoiseParams& noise,
                                      const std::vector<double>& detunings, const NvParams& nv = {});

/// Ensemble-averaged noisy evolution. Output is in the Zeeman basis.
DensityMatrix apply_sequence(const PulseSequence& s, const DensityMatrix& rho0, const NoiseParams& noise,
                             std::uint64_t seed, const NvParams& nv = {});

/// Multiplies every off-diagonal element by exp(-dt/t2).
void dephase(Matrix3cd& rho, double dt_us, double t2_us);

/// Envelope of the |0>-population Rabi oscillation after `t_us` of resonant
/// MW1 drive, averaged over Gaussian static detuning of width sigma.
/// Normalized to 1 at t = 0.
double rabi_envelope(double sigma_mhz, double rabi_mhz, double t_us);

/// Solves rabi_envelope(sigma, rabi, t2_star) = 1/e for sigma.
double calibrate_detuning_sigma(double t2_star_us, double rabi_mhz);

// Line-oriented text format:
//   PULSE <MW1|MW2> <rabi_MHz> <phase_rad> <duration_us> <detuning_MHz>
//   DELAY <duration_us>
//   ECHO <tau_us>
// Numbers are printed with 12 significant digits. Blank lines and lines
// starting with '#' are ignored by the parser.
std::string to_text(const PulseSequence& s);
/// Throws ConfigError naming the offending line.
PulseSequence parse_sequence(const std::string& text);

}  // namespace kcbs

#endif  // KCBS_PULSE_HPP
