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

#include "kcbs/config.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace kcbs {
namespace {

std::string error_location(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.location();
  }
  return "<none>";
}

TEST(ParseConfig, DefaultsWithSeed) {
  const ExperimentConfig c = parse_config(R"({"seed": 7})");
  EXPECT_EQ(*c.seed, 7u);
  EXPECT_EQ(c.repetitions, 1);
  EXPECT_DOUBLE_EQ(c.nv.zero_field_splitting_mhz, 2870.0);
  EXPECT_DOUBLE_EQ(c.noise.t2_star_us, 35.0);
  EXPECT_DOUBLE_EQ(c.noise.t2_us, 148.0);
  EXPECT_FALSE(c.detuning_sigma_mhz.has_value());
  EXPECT_EQ(c.protocol.grid.points_per_period, 16);
  EXPECT_TRUE(c.stochastic());
}

TEST(ParseConfig, AllSections) {
  const ExperimentConfig c = parse_config(R"({
    "seed": 3, "repetitions": 4,
    "nv": {"field_gauss": 400.0, "nuclear_term_enabled": true, "nuclear_projection": -1},
    "noise": {"enabled": true, "t2_us": 100.0, "detuning_sigma_mhz": 0.25, "ensemble_size": 8},
    "readout": {"shots": 1000, "drift_bound": 0.01},
    "pulses": {"mw1_rabi_mhz": 12.0, "chi_rabi_mhz": 8.0, "echo_tau_us": 0.0},
    "sweep": {"points_per_period": 12, "periods": 3}
  })");
  EXPECT_EQ(c.repetitions, 4);
  EXPECT_DOUBLE_EQ(c.nv.field_gauss, 400.0);
  EXPECT_EQ(c.protocol.nv.nuclear_projection, -1);
  EXPECT_DOUBLE_EQ(*c.detuning_sigma_mhz, 0.25);
  EXPECT_DOUBLE_EQ(c.resolved_noise().detuning_sigma_mhz, 0.25);
  EXPECT_EQ(c.readout.shots, 1000);
  EXPECT_DOUBLE_EQ(c.protocol.compile.mw1_rabi_mhz, 12.0);
  EXPECT_DOUBLE_EQ(c.protocol.chi_rabi_mhz, 8.0);
  EXPECT_EQ(c.protocol.grid.periods, 3);
}

TEST(ParseConfig, CalibratesBroadeningWhenUnset) {
  const ExperimentConfig c = parse_config(R"({"seed": 1, "noise": {"detuning_sigma_mhz": null}})");
  EXPECT_NEAR(c.resolved_noise().detuning_sigma_mhz, calibrate_detuning_sigma(35.0, 10.0), 1e-12);
  const ExperimentConfig off = parse_config(R"({"noise": {"enabled": false}, "readout": {"ideal": true, "drift_bound": 0}})");
  EXPECT_FALSE(off.stochastic());
  EXPECT_EQ(off.resolved_noise().ensemble_size, 1);
  EXPECT_TRUE(std::isinf(off.resolved_noise().t2_us));
}

TEST(ParseConfig, ErrorsNameTheField) {
  EXPECT_EQ(error_location(R"({"bogus": 1})"), "bogus");
  EXPECT_EQ(error_location(R"({"seed": 1, "nv": {"field": 1}})"), "nv.field");
  EXPECT_EQ(error_location(R"({"seed": 1, "nv": {"field_gauss": "x"}})"), "nv.field_gauss");
  EXPECT_EQ(error_location(R"({"seed": -1})"), "seed");
  EXPECT_EQ(error_location(R"({"seed": 1, "repetitions": 0})"), "repetitions");
  EXPECT_EQ(error_location(R"({"seed": 1, "readout": {"shots": 0}})"), "readout");
  EXPECT_EQ(error_location(R"({"seed": 1, "sweep": {"points_per_period": 4}})"), "sweep");
  EXPECT_EQ(error_location(R"({"seed": 1, "pulses": {"chi_rabi_mhz": 0}})"), "pulses.chi_rabi_mhz");
  EXPECT_EQ(error_location(R"({"noise": {"enabled": true}})"), "seed");
  EXPECT_NE(error_location("{not json"), "<none>");
}

TEST(ParseConfig, RoundTripThroughJson) {
  ExperimentConfig c = ExperimentConfig::noiseless();
  c.seed = 99;
  c.repetitions = 2;
  c.detuning_sigma_mhz = 0.4;
  c.protocol.echo_tau_us = 1.5;
  const std::string text = config_to_json(c);
  const ExperimentConfig back = parse_config(text);
  EXPECT_EQ(config_to_json(back), text);
  EXPECT_EQ(*back.seed, 99u);
  EXPECT_DOUBLE_EQ(back.protocol.echo_tau_us, 1.5);
}

TEST(LoadConfig, MissingFile) { EXPECT_THROW(load_config("/nonexistent/kcbs.json"), ConfigError); }

}  // namespace
}  // namespace kcbs
