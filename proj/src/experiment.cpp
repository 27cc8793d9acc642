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

#include "kcbs/experiment.hpp"

#include <fstream>
#include <sstream>

#include "kcbs/random.hpp"

namespace kcbs {
namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(p.string(), "cannot open for writing");
  out << content;
  if (!out) throw ConfigError(p.string(), "write failed");
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError(p.string(), "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Estimate refit(const std::filesystem::path& p) {
  try {
    const FitResult f = fit_sinusoid(parse_csv(read_file(p)));
    return {f.point_estimate, f.point_err};
  } catch (const ConfigError& e) {
    throw ConfigError(p.filename().string() + " " + e.location(), e.what());
  } catch (const InvalidInput& e) {
    throw ConfigError(p.filename().string(), e.what());
  }
}

}  // namespace

RunOutput run_once(const ExperimentConfig& config, std::uint64_t seed) {
  const PentagramSet set = build_pentagram();
  const NoiseParams noise = config.resolved_noise();
  Protocol protocol = config.protocol;
  protocol.nv = config.nv;

  RunOutput out;
  out.seed = seed;
  std::array<Estimate, kCycleLength> li{};
  std::array<Estimate, kCycleLength> ov{};
  for (int i = 1; i <= kCycleLength; ++i) {
    out.overlaps[i - 1] = overlap_experiment(i, set, protocol, noise, config.readout,
                                             derive_seed(seed, Stream::Overlap, static_cast<std::uint64_t>(i)));
    ov[i - 1] = {out.overlaps[i - 1].value, out.overlaps[i - 1].error};
  }
  for (int i = 1; i <= kCycleLength; ++i) {
    out.observables[i - 1] = observable_experiment(
        i, set, protocol, noise, config.readout, derive_seed(seed, Stream::Observable, static_cast<std::uint64_t>(i)));
    li[i - 1] = {out.observables[i - 1].value, out.observables[i - 1].error};
  }
  out.report = make_report(li, ov);
  return out;
}

std::uint64_t repetition_seed(std::uint64_t base, int r) {
  return derive_seed(base, Stream::Repetition, static_cast<std::uint64_t>(r));
}

std::vector<RunOutput> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::uint64_t base = config.seed.value_or(0);
  std::vector<RunOutput> runs;
  runs.reserve(static_cast<std::size_t>(config.repetitions));
  for (int r = 0; r < config.repetitions; ++r) runs.push_back(run_once(config, repetition_seed(base, r)));
  return runs;
}

void write_run(const RunOutput& run, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (int i = 1; i <= kCycleLength; ++i) {
    const std::string n = std::to_string(i);
    write_file(dir / ("overlap_" + n + ".csv"), to_csv(run.overlaps[i - 1].data));
    write_file(dir / ("li_" + n + ".csv"), to_csv(run.observables[i - 1].data));
    write_file(dir / ("program_" + n + ".txt"), to_text(run.observables[i - 1].program));
  }
  write_file(dir / "report.json", to_json(run.report));
}

ExperimentReport analyze_directory(const std::filesystem::path& dir) {
  std::array<Estimate, kCycleLength> li{};
  std::array<Estimate, kCycleLength> ov{};
  for (int i = 1; i <= kCycleLength; ++i) {
    const std::string n = std::to_string(i);
    ov[i - 1] = refit(dir / ("overlap_" + n + ".csv"));
    li[i - 1] = refit(dir / ("li_" + n + ".csv"));
  }
  return make_report(li, ov);
}

RepetitionSummary summarize(const std::vector<RunOutput>& runs) {
  RepetitionSummary s;
  s.runs = static_cast<int>(runs.size());
  if (runs.empty()) return s;
  int violating = 0;
  for (const auto& r : runs) {
    s.mean_sum += r.report.sum.value;
    s.mean_epsilon += r.report.epsilon.value;
    violating += r.report.violates() ? 1 : 0;
  }
  s.mean_sum /= s.runs;
  s.mean_epsilon /= s.runs;
  s.fraction_violating = static_cast<double>(violating) / s.runs;
  return s;
}

}  // namespace kcbs
