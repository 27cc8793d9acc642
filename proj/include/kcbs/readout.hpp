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

#ifndef KCBS_READOUT_HPP
#define KCBS_READOUT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kcbs/geometry.hpp"
#include "kcbs/pulse.hpp"

namespace kcbs {

/// Photon-count readout. Rates are mean counts per shot; |0> is bright.
struct ReadoutModel {
  double bright_rate = 0.03;
  double dark_rate = 0.02;
  std::int64_t shots = 2'000'000;
  double drift_bound = 0.02;
  /// Replace Poisson draws by their means (infinite-shot limit).
  bool ideal = false;

  void validate() const;
  /// Expected standard error of the normalized signal at population p0.
  [[nodiscard]] double expected_signal_error(double p0) const;
};

struct CountSample {
  double counts = 0.0;
  double signal = 0.0;      // normalized: dark -> 0, bright -> 1, plus baseline offset
  double signal_err = 0.0;  // > 0
};

/// Counts for one data point at population <0|rho|0>, with a baseline
/// offset added to the normalized signal.
CountSample simulate_counts(const DensityMatrix& rho, const ReadoutModel& m, std::uint64_t seed,
                            double baseline_offset = 0.0);

/// Per-curve baseline offset, uniform in [-drift_bound, +drift_bound].
double draw_baseline_offset(const ReadoutModel& m, std::uint64_t seed);

/// Uniform chi grid from 0 to 2*pi*periods with `points_per_period` steps
/// per period, endpoints included.
struct SweepGrid {
  int points_per_period = 16;
  int periods = 2;

  [[nodiscard]] std::vector<double> values() const;
};

struct SweepData {
  std::vector<double> chi;
  std::vector<double> signal;
  std::vector<double> signal_err;

  [[nodiscard]] std::size_t size() const { return chi.size(); }
  /// Throws InvalidInput on length mismatch or non-positive errors.
  void validate() const;
};

/// Throws InvalidInput unless the grid spans one period, contains 2*pi and
/// has at least 8 points per period.
void check_sweep_grid(std::span<const double> chi);

/// Settings shared by the measurement protocols.
struct Protocol {
  CompileOptions compile;
  double chi_rabi_mhz = 10.0;
  /// Echo delay inserted between preparation and the chi pulse; 0 disables it.
  double echo_tau_us = 2.0;
  SweepGrid grid;
  NvParams nv;
};

/// Resonant MW1 pulse of rotation angle chi.
Pulse chi_pulse(double chi, double rabi_mhz);

/// Runs |0><0| through `prep`, then an MW1 rotation by each chi, and reads
/// out. The static-noise ensemble is shared across the curve; each point
/// draws its own counts, and the curve shares one baseline offset.
SweepData chi_sweep(const PulseSequence& prep, std::span<const double> grid, const NoiseParams& noise,
                    const ReadoutModel& m, std::uint64_t seed, double chi_rabi_mhz = 10.0, const NvParams& nv = {});

struct FitResult {
  double amplitude = 0.0;
  double offset = 0.0;
  double phase = 0.0;
  double amplitude_err = 0.0;
  double offset_err = 0.0;
  double point_estimate = 0.0;  // fitted curve at chi = 2*pi
  double point_err = 0.0;       // sqrt(amplitude_err^2 + offset_err^2)
  double chi_squared = 0.0;
  bool out_of_range = false;  // point_estimate outside [-0.05, 1.05]

  /// Fitted model y0 + A cos(chi - chi0).
  [[nodiscard]] double evaluate(double chi) const;
};

/// Weighted linear least squares of y = y0 + a cos(chi) + b sin(chi).
FitResult fit_sinusoid(const SweepData& d);

struct Measurement {
  double value = 0.0;
  double error = 0.0;
  FitResult fit;
  SweepData data;
  PulseSequence program;
};

/// Prepares `second` from |0>, runs the inverse preparation of `first`, and
/// measures the |0> population: |<first|second>|^2.
Measurement overlap_experiment(const Direction& first, const Direction& second, const Protocol& protocol,
                               const NoiseParams& noise, const ReadoutModel& m, std::uint64_t seed);

/// Orthogonality test between l_i and l_{i+1}; `i` is 1-based and cyclic.
Measurement overlap_experiment(int i, const PentagramSet& set, const Protocol& protocol, const NoiseParams& noise,
                               const ReadoutModel& m, std::uint64_t seed);

/// <L_i> in the state |0>: prepares l_i, optional echo, chi sweep. `i` is 1-based.
Measurement observable_experiment(int i, const PentagramSet& set, const Protocol& protocol,
                                  const NoiseParams& noise, const ReadoutModel& m, std::uint64_t seed);

// CSV with header `chi_rad,signal,signal_err`, 12 significant digits.
std::string to_csv(const SweepData& d);
SweepData parse_csv(const std::string& text);

}  // namespace kcbs

#endif  // KCBS_READOUT_HPP
