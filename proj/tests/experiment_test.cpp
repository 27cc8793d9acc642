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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace kcbs {
namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("kcbs_experiment_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

TEST(RunOnce, NoiselessReachesRootFive) {
  const RunOutput r = run_once(ExperimentConfig::noiseless(), 0);
  EXPECT_NEAR(r.report.sum.value, std::sqrt(5.0), 1e-6);
  EXPECT_NEAR(r.report.epsilon.value, 0.0, 1e-9);
  EXPECT_NEAR(r.report.robust_bound, std::sqrt(5.0), 1e-4);
  EXPECT_TRUE(r.report.violates());
}

TEST(RunOnce, NoisyRunIsPlausibleAndDeterministic) {
  ExperimentConfig c;
  c.seed = 11;
  const RunOutput a = run_once(c, 11);
  const RunOutput b = run_once(c, 11);
  EXPECT_EQ(to_json(a.report), to_json(b.report));
  EXPECT_GT(a.report.sum.value, 2.0);
  EXPECT_LT(a.report.sum.value, 2.4);
  EXPECT_NE(to_json(run_once(c, 12).report), to_json(a.report));
}

TEST(RunExperiment, RepetitionsUseDistinctSeeds) {
  ExperimentConfig c;
  c.seed = 5;
  c.repetitions = 3;
  const auto runs = run_experiment(c);
  ASSERT_EQ(runs.size(), 3u);
  EXPECT_NE(runs[0].seed, runs[1].seed);
  EXPECT_EQ(runs[2].seed, repetition_seed(5, 2));
  const RepetitionSummary s = summarize(runs);
  EXPECT_EQ(s.runs, 3);
  EXPECT_NEAR(s.mean_sum, (runs[0].report.sum.value + runs[1].report.sum.value + runs[2].report.sum.value) / 3, 1e-12);
  EXPECT_GE(s.fraction_violating, 0.0);
  EXPECT_LE(s.fraction_violating, 1.0);
}

TEST(RunExperiment, RequiresSeedWhenStochastic) {
  ExperimentConfig c;
  EXPECT_THROW(run_experiment(c), ConfigError);
}

TEST(WriteRun, AnalyzeReproducesReport) {
  ExperimentConfig c;
  c.seed = 21;
  const RunOutput r = run_once(c, 21);
  const auto dir = scratch("analyze");
  write_run(r, dir);
  for (const char* f : {"overlap_1.csv", "li_5.csv", "program_3.txt", "report.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  const ExperimentReport again = analyze_directory(dir);
  EXPECT_EQ(to_json(again), to_json(r.report));
  std::filesystem::remove_all(dir);
}

TEST(WriteRun, ProgramFileParsesBack) {
  const RunOutput r = run_once(ExperimentConfig::noiseless(), 0);
  const auto dir = scratch("program");
  write_run(r, dir);
  std::ifstream in(dir / "program_2.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(parse_sequence(ss.str()).size(), r.observables[1].program.size());
  std::filesystem::remove_all(dir);
}

TEST(AnalyzeDirectory, MissingFilesAreConfigErrors) {
  const auto dir = scratch("missing");
  std::filesystem::create_directories(dir);
  EXPECT_THROW(analyze_directory(dir), ConfigError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace kcbs
