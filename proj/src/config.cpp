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

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace kcbs {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
  }
}

template <typename T>
void read(const json& obj, const std::string& path, const char* key, T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  const std::string where = path.empty() ? std::string(key) : path + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError(where, "expected true or false");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_unsigned() == false && v.get<std::int64_t>() < 0) throw ConfigError(where, "must be >= 0");
    }
  } else {
    if (!v.is_number()) throw ConfigError(where, "expected a number");
  }
  out = v.get<T>();
}

template <typename F>
void section(const json& root, const char* key, F&& f) {
  if (root.contains(key)) f(root.at(key), std::string(key));
}

void checked(const char* where, auto&& fn) {
  try {
    fn();
  } catch (const InvalidInput& e) {
    throw ConfigError(where, e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  checked("nv", [&] { nv.validate(); });
  checked("noise", [&] { noise.validate(); });
  if (detuning_sigma_mhz && !(*detuning_sigma_mhz >= 0.0)) {
    throw ConfigError("noise.detuning_sigma_mhz", "must be >= 0");
  }
  checked("readout", [&] { readout.validate(); });
  if (!(protocol.compile.mw1_rabi_mhz > 0.0)) throw ConfigError("pulses.mw1_rabi_mhz", "must be positive");
  if (!(protocol.compile.mw2_rabi_mhz > 0.0)) throw ConfigError("pulses.mw2_rabi_mhz", "must be positive");
  if (!(protocol.chi_rabi_mhz > 0.0)) throw ConfigError("pulses.chi_rabi_mhz", "must be positive");
  if (!(protocol.echo_tau_us >= 0.0)) throw ConfigError("pulses.echo_tau_us", "must be >= 0");
  checked("sweep", [&] { check_sweep_grid(protocol.grid.values()); });
  if (repetitions < 1) throw ConfigError("repetitions", "must be >= 1");
  if (stochastic() && !seed) throw ConfigError("seed", "required when noise or shot noise is enabled");
}

bool ExperimentConfig::stochastic() const {
  return noise_enabled || !readout.ideal || readout.drift_bound > 0.0;
}

NoiseParams ExperimentConfig::resolved_noise() const {
  if (!noise_enabled) return NoiseParams::noiseless();
  NoiseParams n = noise;
  n.detuning_sigma_mhz =
      detuning_sigma_mhz ? *detuning_sigma_mhz : calibrate_detuning_sigma(noise.t2_star_us, protocol.chi_rabi_mhz);
  return n;
}

ExperimentConfig ExperimentConfig::noiseless() {
  ExperimentConfig c;
  c.noise_enabled = false;
  c.readout.ideal = true;
  c.readout.drift_bound = 0.0;
  c.seed = 0;
  return c;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("byte " + std::to_string(e.byte), "invalid JSON");
  }
  reject_unknown(root, "", {"seed", "repetitions", "nv", "noise", "readout", "pulses", "sweep"});

  ExperimentConfig c;
  if (root.contains("seed")) {
    std::uint64_t s = 0;
    read(root, "", "seed", s);
    c.seed = s;
  }
  read(root, "", "repetitions", c.repetitions);

  section(root, "nv", [&](const json& o, const std::string& p) {
    reject_unknown(o, p,
                   {"zero_field_splitting_mhz", "gamma_e_mhz_per_gauss", "field_gauss", "hyperfine_axial_mhz",
                    "nuclear_projection", "nuclear_term_enabled", "nuclear_zeeman_offset_mhz"});
    read(o, p, "zero_field_splitting_mhz", c.nv.zero_field_splitting_mhz);
    read(o, p, "gamma_e_mhz_per_gauss", c.nv.gamma_e_mhz_per_gauss);
    read(o, p, "field_gauss", c.nv.field_gauss);
    read(o, p, "hyperfine_axial_mhz", c.nv.hyperfine_axial_mhz);
    read(o, p, "nuclear_projection", c.nv.nuclear_projection);
    read(o, p, "nuclear_term_enabled", c.nv.nuclear_term_enabled);
    read(o, p, "nuclear_zeeman_offset_mhz", c.nv.nuclear_zeeman_offset_mhz);
  });
  section(root, "noise", [&](const json& o, const std::string& p) {
    reject_unknown(o, p, {"enabled", "t2_star_us", "t2_us", "detuning_sigma_mhz", "ensemble_size"});
    read(o, p, "enabled", c.noise_enabled);
    read(o, p, "t2_star_us", c.noise.t2_star_us);
    read(o, p, "t2_us", c.noise.t2_us);
    read(o, p, "ensemble_size", c.noise.ensemble_size);
    if (o.contains("detuning_sigma_mhz") && !o.at("detuning_sigma_mhz").is_null()) {
      double s = 0.0;
      read(o, p, "detuning_sigma_mhz", s);
      c.detuning_sigma_mhz = s;
    }
  });
  section(root, "readout", [&](const json& o, const std::string& p) {
    reject_unknown(o, p, {"bright_rate", "dark_rate", "shots", "drift_bound", "ideal"});
    read(o, p, "bright_rate", c.readout.bright_rate);
    read(o, p, "dark_rate", c.readout.dark_rate);
    read(o, p, "shots", c.readout.shots);
    read(o, p, "drift_bound", c.readout.drift_bound);
    read(o, p, "ideal", c.readout.ideal);
  });
  section(root, "pulses", [&](const json& o, const std::string& p) {
    reject_unknown(o, p, {"mw1_rabi_mhz", "mw2_rabi_mhz", "chi_rabi_mhz", "echo_tau_us"});
    read(o, p, "mw1_rabi_mhz", c.protocol.compile.mw1_rabi_mhz);
    read(o, p, "mw2_rabi_mhz", c.protocol.compile.mw2_rabi_mhz);
    read(o, p, "chi_rabi_mhz", c.protocol.chi_rabi_mhz);
    read(o, p, "echo_tau_us", c.protocol.echo_tau_us);
  });
  section(root, "sweep", [&](const json& o, const std::string& p) {
    reject_unknown(o, p, {"points_per_period", "periods"});
    read(o, p, "points_per_period", c.protocol.grid.points_per_period);
    read(o, p, "periods", c.protocol.grid.periods);
  });
  c.protocol.nv = c.nv;
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["repetitions"] = c.repetitions;
  j["nv"] = {{"zero_field_splitting_mhz", c.nv.zero_field_splitting_mhz},
             {"gamma_e_mhz_per_gauss", c.nv.gamma_e_mhz_per_gauss},
             {"field_gauss", c.nv.field_gauss},
             {"hyperfine_axial_mhz", c.nv.hyperfine_axial_mhz},
             {"nuclear_projection", c.nv.nuclear_projection},
             {"nuclear_term_enabled", c.nv.nuclear_term_enabled},
             {"nuclear_zeeman_offset_mhz", c.nv.nuclear_zeeman_offset_mhz}};
  j["noise"] = {{"enabled", c.noise_enabled},
                {"t2_star_us", c.noise.t2_star_us},
                {"t2_us", c.noise.t2_us},
                {"detuning_sigma_mhz", c.detuning_sigma_mhz ? json(*c.detuning_sigma_mhz) : json(nullptr)},
                {"ensemble_size", c.noise.ensemble_size}};
  j["readout"] = {{"bright_rate", c.readout.bright_rate},
                  {"dark_rate", c.readout.dark_rate},
                  {"shots", c.readout.shots},
                  {"drift_bound", c.readout.drift_bound},
                  {"ideal", c.readout.ideal}};
  j["pulses"] = {{"mw1_rabi_mhz", c.protocol.compile.mw1_rabi_mhz},
                 {"mw2_rabi_mhz", c.protocol.compile.mw2_rabi_mhz},
                 {"chi_rabi_mhz", c.protocol.chi_rabi_mhz},
                 {"echo_tau_us", c.protocol.echo_tau_us}};
  j["sweep"] = {{"points_per_period", c.protocol.grid.points_per_period}, {"periods", c.protocol.grid.periods}};
  return j.dump(2) + "\n";
}

}  // namespace kcbs
