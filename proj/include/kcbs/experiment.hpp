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

#ifndef KCBS_EXPERIMENT_HPP
#define KCBS_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "kcbs/analysis.hpp"
#include "kcbs/config.hpp"

namespace kcbs {

struct RunOutput {
  std::uint64_t seed = 0;
  std::array<Measurement, kCycleLength> overlaps;
  std::array<Measurement, kCycleLength> observables;
  ExperimentReport report;
};

/// One full pass: five orthogonality tests, five <L_i> sweeps, analysis.
RunOutput run_once(const ExperimentConfig& config, std::uint64_t seed);

/// Seed of repetition `r` of a config seeded with `base`.
std::uint64_t repetition_seed(std::uint64_t base, int r);

/// All repetitions of `config`. Throws ConfigError if the config is invalid.
std::vector<RunOutput> run_experiment(const ExperimentConfig& config);

/// Writes overlap_<i>.csv, li_<i>.csv, program_<i>.txt and report.json.
void write_run(const RunOutput& run, const std::filesystem::path& dir);

/// Re-fits overlap_<i>.csv and li_<i>.csv found in `dir` and rebuilds the report.
ExperimentReport analyze_directory(const std::filesystem::path& dir);

struct RepetitionSummary {
  int runs = 0;
  double mean_sum = 0.0;
  double mean_epsilon = 0.0;
  double fraction_violating = 0.0;  // robust_bound > 2
};

RepetitionSummary summarize(const std::vector<RunOutput>& runs);

}  // namespace kcbs

#endif  // KCBS_EXPERIMENT_HPP
