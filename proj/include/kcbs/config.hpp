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

#ifndef KCBS_CONFIG_HPP
#define KCBS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "kcbs/nv_system.hpp"
#include "kcbs/pulse.hpp"
#include "kcbs/readout.hpp"

namespace kcbs {

/// Everything a `run` needs. Defaults reproduce the NV experiment settings.
struct ExperimentConfig {
  NvParams nv;
  /// When false the evolution is unitary (no broadening, no T2 decay).
  bool noise_enabled = true;
  NoiseParams noise;
  /// Unset means: calibrate from t2_star at the chi-pulse Rabi frequency.
  std::optional<double> detuning_sigma_mhz;
  ReadoutModel readout;
  Protocol protocol;
  std::optional<std::uint64_t> seed;
  int repetitions = 1;

  /// Checks every sub-invariant; throws ConfigError naming the field.
  void validate() const;

  /// True when any stage draws random numbers.
  [[nodiscard]] bool stochastic() const;

  /// Noise parameters with the broadening width filled in.
  [[nodiscard]] NoiseParams resolved_noise() const;

  /// Ideal pipeline: no decoherence, infinite-shot readout, no drift.
  static ExperimentConfig noiseless();
};

/// Parses a JSON config document. Unknown keys are rejected. Throws
/// ConfigError with a dotted field path.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// The config as a JSON document, with every field present.
std::string config_to_json(const ExperimentConfig& c);

}  // namespace kcbs

#endif  // KCBS_CONFIG_HPP
