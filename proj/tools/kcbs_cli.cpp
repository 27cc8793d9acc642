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

// kcbs: command-line front end for the single-qutrit contextuality simulator.
//
// Exit codes: 0 success, 1 inequality not violated (run only),
//             2 configuration error, 3 internal numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kcbs/analysis.hpp"
#include "kcbs/config.hpp"
#include "kcbs/experiment.hpp"
#include "kcbs/geometry.hpp"
#include "kcbs/nchv.hpp"
#include "kcbs/nv_system.hpp"
#include "kcbs/pulse.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNotViolated = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool json = false;
  std::string out_dir = "kcbs_out";

  // levels
  std::optional<double> b_field;
  // bounds
  bool list_argmax = false;
  // compile
  std::optional<int> index;
  std::optional<double> theta;
  std::optional<double> phi;
  bool invert = false;
};

kcbs::ExperimentConfig load(const Options& o, bool need_seed) {
  kcbs::ExperimentConfig c = o.config_path.empty() ? kcbs::ExperimentConfig{} : kcbs::load_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (need_seed) c.validate();
  return c;
}

std::string assignment_string(kcbs::Assignment a) {
  std::string s = "(";
  for (int i = 0; i < 5; ++i) {
    s += std::to_string(a[i]);
    s += i < 4 ? "," : ")";
  }
  return s;
}

int cmd_geometry(const Options& o) {
  const kcbs::PentagramSet set = kcbs::build_pentagram();
  const kcbs::QutritState psi = kcbs::psi_state(set);

  json j;
  j["theta_rad"] = set.theta;
  j["cos_theta"] = std::cos(set.theta);
  j["psi_axis"] = {set.psi_axis.x(), set.psi_axis.y(), set.psi_axis.z()};
  j["directions"] = json::array();
  j["phis_rad"] = json::array();
  j["cyclic_dots"] = json::array();
  j["psi_overlaps"] = json::array();
  json dots = json::array();
  for (int i = 0; i < kcbs::kCycleLength; ++i) {
    const auto& d = set.directions[i];
    j["directions"].push_back({d.x(), d.y(), d.z()});
    j["phis_rad"].push_back(set.phis[i]);
    j["cyclic_dots"].push_back(d.dot(set.directions[kcbs::next_index(i)]));
    j["psi_overlaps"].push_back(kcbs::expectation(kcbs::projector(d), psi));
    json row = json::array();
    for (int k = 0; k < kcbs::kCycleLength; ++k) row.push_back(d.dot(set.directions[k]));
    dots.push_back(row);
  }
  j["dot_matrix"] = dots;

  if (o.json) {
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::printf("theta = arccos(5^(-1/4)) = %.10f rad  (cos theta = %.10f)\n", set.theta, std::cos(set.theta));
  std::printf("psi axis = (0, 0, 1)\n\n");
  std::printf("  n   phi_n/pi        x             y             z        l_n.l_{n+1}    |<psi|l_n>|^2\n");
  for (int i = 0; i < kcbs::kCycleLength; ++i) {
    const auto& d = set.directions[i];
    std::printf("  %d   %6.3f   %12.9f  %12.9f  %12.9f  %13.3e   %.10f\n", i + 1, set.phis[i] / std::numbers::pi,
                d.x(), d.y(), d.z(), j["cyclic_dots"][i].get<double>(), j["psi_overlaps"][i].get<double>());
  }
  std::printf("\npairwise dot products:\n");
  for (int i = 0; i < kcbs::kCycleLength; ++i) {
    std::printf("   ");
    for (int k = 0; k < kcbs::kCycleLength; ++k) std::printf(" %10.6f", dots[i][k].get<double>());
    std::printf("\n");
  }
  return kExitOk;
}

int cmd_bounds(const Options& o) {
  const auto classical = kcbs::max_kcbs_over_assignments();
  const auto exclusive = kcbs::max_exclusive_sum();
  const kcbs::PentagramSet set = kcbs::build_pentagram();
  const auto quantum = kcbs::quantum_prediction(set, kcbs::psi_state(set));

  if (o.json) {
    json j;
    j["classical"] = classical.value;
    j["exclusive"] = exclusive.value;
    j["quantum"] = quantum.kcbs_value;
    j["gap"] = quantum.kcbs_value - classical.value;
    j["classical_min"] = kcbs::min_kcbs_over_assignments();
    j["exclusive_feasible"] = kcbs::exclusive_assignments().size();
    if (o.list_argmax) {
      j["argmax"] = json::array();
      for (auto a : classical.argmax) j["argmax"].push_back(a.values());
      j["exclusive_argmax"] = json::array();
      for (auto a : exclusive.argmax) j["exclusive_argmax"].push_back(a.values());
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::printf("classical=%d exclusive=%d quantum=%.7f gap=%.7f\n", classical.value, exclusive.value,
              quantum.kcbs_value, quantum.kcbs_value - classical.value);
  if (o.list_argmax) {
    std::printf("argmax (%zu assignments):\n", classical.argmax.size());
    for (auto a : classical.argmax) std::printf("  %s\n", assignment_string(a).c_str());
    std::printf("exclusive argmax (%zu assignments):\n", exclusive.argmax.size());
    for (auto a : exclusive.argmax) std::printf("  %s\n", assignment_string(a).c_str());
  }
  return kExitOk;
}

int cmd_levels(const Options& o) {
  kcbs::ExperimentConfig c = load(o, false);
  if (o.b_field) c.nv.field_gauss = *o.b_field;
  const kcbs::LevelStructure s = kcbs::energy_levels(c.nv);
  const double dm = s.f_minus_mhz - kcbs::kMeasuredMinusTransitionMhz;
  const double dp = s.f_plus_mhz - kcbs::kMeasuredPlusTransitionMhz;

  if (o.json) {
    json j;
    j["field_gauss"] = c.nv.field_gauss;
    j["energies_mhz"] = {{"plus", s.energy(kcbs::ZeemanLevel::Plus)},
                         {"zero", s.energy(kcbs::ZeemanLevel::Zero)},
                         {"minus", s.energy(kcbs::ZeemanLevel::Minus)}};
    j["f_minus_mhz"] = s.f_minus_mhz;
    j["f_plus_mhz"] = s.f_plus_mhz;
    j["delta_f_minus_mhz"] = dm;
    j["delta_f_plus_mhz"] = dp;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::printf("B = %.4f G, D = %.4f MHz, gamma_e = %.5f MHz/G\n", c.nv.field_gauss, c.nv.zero_field_splitting_mhz,
              c.nv.gamma_e_mhz_per_gauss);
  std::printf("E(+1) = %10.3f MHz\nE( 0) = %10.3f MHz\nE(-1) = %10.3f MHz\n", s.energy(kcbs::ZeemanLevel::Plus),
              s.energy(kcbs::ZeemanLevel::Zero), s.energy(kcbs::ZeemanLevel::Minus));
  std::printf("f_minus = %.3f MHz  (measured %.1f, delta %+.3f)\n", s.f_minus_mhz, kcbs::kMeasuredMinusTransitionMhz,
              dm);
  std::printf("f_plus  = %.3f MHz  (measured %.1f, delta %+.3f)\n", s.f_plus_mhz, kcbs::kMeasuredPlusTransitionMhz,
              dp);
  return kExitOk;
}

int cmd_compile(const Options& o) {
  kcbs::ExperimentConfig c = load(o, false);
  kcbs::Direction target;
  std::string label;
  if (o.index) {
    if (*o.index < 1 || *o.index > kcbs::kCycleLength) throw kcbs::ConfigError("--index", "must be in 1..5");
    target = kcbs::build_pentagram().directions[*o.index - 1];
    label = "l_" + std::to_string(*o.index);
  } else if (o.theta && o.phi) {
    target = kcbs::Direction::spherical(*o.theta, *o.phi);
    label = "theta=" + std::to_string(*o.theta) + " phi=" + std::to_string(*o.phi);
  } else {
    throw kcbs::ConfigError("compile", "give --index or both --theta and --phi");
  }

  kcbs::PulseSequence seq;
  try {
    seq = kcbs::compile_prep(target, c.protocol.compile, c.nv);
  } catch (const kcbs::SynthesisFailure& e) {
    std::fprintf(stderr, "synthesis failed: %s (best fidelity %.12f)\n", e.what(), e.best_fidelity());
    return kExitNumerical;
  }
  const double fidelity = kcbs::preparation_fidelity(seq, target, c.nv);
  double reported = fidelity;
  if (o.invert) {
    seq = kcbs::invert_sequence(seq);
    // |<0| U_inv |l>|^2 for the inverted program.
    const kcbs::Vector3cd ket =
        kcbs::basis_change(kcbs::neutrally_polarized_state(target), kcbs::Basis::Zeeman).amplitudes();
    const kcbs::Vector3cd back = kcbs::sequence_unitary(seq, 0.0, c.nv) * ket;
    reported = std::norm(back(static_cast<int>(kcbs::ZeemanLevel::Zero)));
  }
  const std::string text = kcbs::to_text(seq);
  if (o.json) {
    json j;
    j["target"] = label;
    j["direction"] = {target.x(), target.y(), target.z()};
    j["inverted"] = o.invert;
    j["program"] = text;
    j["fidelity"] = reported;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("# target %s  direction (%.9f, %.9f, %.9f)%s\n", label.c_str(), target.x(), target.y(), target.z(),
                o.invert ? "  [inverted]" : "");
    std::printf("# noiseless fidelity %.15f\n", reported);
    std::fputs(text.c_str(), stdout);
  }
  return kExitOk;
}

void print_report(const kcbs::ExperimentReport& r) {
  std::printf("  i    <L_i>        err        overlap      err\n");
  for (int i = 0; i < kcbs::kCycleLength; ++i) {
    std::printf("  %d  %9.5f  %9.5f   %9.5f  %9.5f\n", i + 1, r.li[i].value, r.li[i].error, r.overlaps[i].value,
                r.overlaps[i].error);
  }
  std::printf("sum = %.4f +- %.4f   (%.2f sigma above %g)\n", r.sum.value, r.sum.error, r.sigma, r.classical_bound);
  std::printf("epsilon = %.5f +- %.5f\n", r.epsilon.value, r.epsilon.error);
  std::printf("robust bound = %.4f  -> %s\n", r.robust_bound,
              r.violates() ? "noncontextual bound violated" : "not violated");
}

int cmd_run(const Options& o) {
  const kcbs::ExperimentConfig c = load(o, true);
  const auto runs = kcbs::run_experiment(c);
  const std::filesystem::path out(o.out_dir);
  bool all_violate = true;
  if (runs.size() == 1) {
    kcbs::write_run(runs[0], out);
  } else {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      char name[32];
      std::snprintf(name, sizeof name, "rep_%03zu", r);
      kcbs::write_run(runs[r], out / name);
    }
  }
  for (const auto& r : runs) all_violate = all_violate && r.report.violates();

  if (runs.size() > 1) {
    const auto s = kcbs::summarize(runs);
    json j = {{"runs", s.runs},
              {"mean_sum", s.mean_sum},
              {"mean_epsilon", s.mean_epsilon},
              {"fraction_violating", s.fraction_violating}};
    std::ofstream(out / "summary.json", std::ios::binary) << j.dump(2) << "\n";
    if (o.json) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::printf("%d runs: mean sum %.4f, mean epsilon %.5f, robust bound > 2 in %.0f%%\n", s.runs, s.mean_sum,
                  s.mean_epsilon, 100.0 * s.fraction_violating);
    }
  } else if (o.json) {
    std::cout << kcbs::to_json(runs[0].report);
  } else {
    print_report(runs[0].report);
    std::printf("wrote %s\n", (out / "report.json").string().c_str());
  }
  return all_violate ? kExitOk : kExitNotViolated;
}

int cmd_analyze(const Options& o) {
  const kcbs::ExperimentReport r = kcbs::analyze_directory(o.out_dir);
  if (o.json) {
    std::cout << kcbs::to_json(r);
  } else {
    print_report(r);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-qutrit KCBS contextuality simulator"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Machine-readable output");
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "Random seed (overrides the config)");
  };

  auto* geometry = app.add_subcommand("geometry", "Pentagram directions and overlaps");
  add_common(geometry);

  auto* bounds = app.add_subcommand("bounds", "Classical and quantum bounds by enumeration");
  add_common(bounds);
  bounds->add_flag("--list-argmax", o.list_argmax, "List maximizing assignments");

  auto* levels = app.add_subcommand("levels", "NV level energies and transition frequencies");
  add_common(levels);
  add_config(levels);
  levels->add_option("--b-field", o.b_field, "Field magnitude in gauss");

  auto* compile = app.add_subcommand("compile", "Synthesize a state-preparation pulse program");
  add_common(compile);
  add_config(compile);
  compile->add_option("--index", o.index, "Pentagram direction 1..5");
  compile->add_option("--theta", o.theta, "Polar angle of the target (rad)");
  compile->add_option("--phi", o.phi, "Azimuth of the target (rad)");
  compile->add_flag("--invert", o.invert, "Emit the inverse program");

  auto* run = app.add_subcommand("run", "Simulate the full experiment and analysis");
  add_common(run);
  add_config(run);
  run->add_option("--out-dir", o.out_dir, "Directory for CSV and report files");

  auto* analyze = app.add_subcommand("analyze", "Re-fit sweep CSVs in a run directory");
  add_common(analyze);
  analyze->add_option("--out-dir", o.out_dir, "Run directory to analyze");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*geometry) return cmd_geometry(o);
    if (*bounds) return cmd_bounds(o);
    if (*levels) return cmd_levels(o);
    if (*compile) return cmd_compile(o);
    if (*run) return cmd_run(o);
    if (*analyze) return cmd_analyze(o);
  } catch (const kcbs::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const kcbs::InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
