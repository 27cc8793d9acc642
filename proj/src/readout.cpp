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

#include "kcbs/readout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "kcbs/random.hpp"

namespace kcbs {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGridTol = 1e-9;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void ReadoutModel::validate() const {
  if (!(dark_rate >= 0.0) || !(bright_rate > dark_rate)) throw InvalidInput("readout needs bright > dark >= 0");
  if (shots < 1) throw InvalidInput("readout needs shots >= 1");
  if (!(drift_bound >= 0.0) || !(drift_bound < 1.0)) throw InvalidInput("drift_bound must be in [0, 1)");
}

double ReadoutModel::expected_signal_error(double p0) const {
  const double p = std::clamp(p0, 0.0, 1.0);
  const double n = static_cast<double>(shots);
  const double mean = n * (p * bright_rate + (1.0 - p) * dark_rate);
  return std::sqrt(std::max(mean, 1.0)) / n / (bright_rate - dark_rate);
}

CountSample simulate_counts(const DensityMatrix& rho, const ReadoutModel& m, std::uint64_t seed,
                            double baseline_offset) {
  m.validate();
  const double p0 = std::clamp(rho.population(ZeemanLevel::Zero), 0.0, 1.0);
  const double n = static_cast<double>(m.shots);
  const double contrast = m.bright_rate - m.dark_rate;
  const double mean = n * (p0 * m.bright_rate + (1.0 - p0) * m.dark_rate);

  CountSample s;
  if (m.ideal) {
    s.counts = mean;
    s.signal_err = m.expected_signal_error(p0);
  } else {
    Rng rng(seed);
    std::poisson_distribution<std::int64_t> poisson(mean);
    s.counts = static_cast<double>(poisson(rng));
    s.signal_err = std::sqrt(std::max(s.counts, 1.0)) / n / contrast;
  }
  s.signal = (s.counts / n - m.dark_rate) / contrast + baseline_offset;
  return s;
}

double draw_baseline_offset(const ReadoutModel& m, std::uint64_t seed) {
  m.validate();
  if (m.drift_bound == 0.0) return 0.0;
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-m.drift_bound, m.drift_bound);
  return u(rng);
}

std::vector<double> SweepGrid::values() const {
  if (points_per_period < 1 || periods < 1) throw InvalidInput("sweep grid needs positive sizes");
  const int n = points_per_period * periods;
  std::vector<double> chi(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) chi[k] = kTwoPi * k / points_per_period;
  return chi;
}

void SweepData::validate() const {
  if (signal.size() != chi.size() || signal_err.size() != chi.size()) {
    throw InvalidInput("sweep data columns differ in length");
  }
  for (double e : signal_err) {
    if (!(e > 0.0)) throw InvalidInput("sweep data errors must be positive");
  }
}

void check_sweep_grid(std::span<const double> chi) {
  if (chi.size() < 2) throw InvalidInput("chi grid needs at least two points");
  const auto [lo, hi] = std::minmax_element(chi.begin(), chi.end());
  const double span = *hi - *lo;
  if (span < kTwoPi - kGridTol) throw InvalidInput("chi grid must cover at least one full period");
  const bool has_two_pi =
      std::any_of(chi.begin(), chi.end(), [](double c) { return std::abs(c - kTwoPi) <= kGridTol; });
  if (!has_two_pi) throw InvalidInput("chi grid must include chi = 2*pi");
  const double per_period = static_cast<double>(chi.size() - 1) * kTwoPi / span;
  if (per_period < 8.0 - kGridTol) throw InvalidInput("chi grid too sparse for fitting (< 8 points per period)");
}

Pulse chi_pulse(double chi, double rabi_mhz) {
  if (chi < 0.0) return pulse_with_area(Channel::MW1, rabi_mhz, -chi, std::numbers::pi);
  return pulse_with_area(Channel::MW1, rabi_mhz, chi);
}

SweepData chi_sweep(const PulseSequence& prep, std::span<const double> grid, const NoiseParams& noise,
                    const ReadoutModel& m, std::uint64_t seed, double chi_rabi_mhz, const NvParams& nv) {
  check_sweep_grid(grid);
  m.validate();

  Matrix3cd ground = Matrix3cd::Zero();
  ground(static_cast<int>(ZeemanLevel::Zero), static_cast<int>(ZeemanLevel::Zero)) = 1.0;
  const std::vector<double> detunings = ensemble_detunings(noise, derive_seed(seed, Stream::Ensemble));
  const std::vector<Matrix3cd> prepared = evolve_members(prep, ground, noise, detunings, nv);
  const double offset = draw_baseline_offset(m, derive_seed(seed, Stream::Drift));

  SweepData d;
  d.chi.assign(grid.begin(), grid.end());
  d.signal.reserve(grid.size());
  d.signal_err.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Pulse p = chi_pulse(grid[k], chi_rabi_mhz);
    Matrix3cd mean = Matrix3cd::Zero();
    for (std::size_t j = 0; j < prepared.size(); ++j) {
      const Matrix3cd u = pulse_unitary(p, detunings[j], nv);
      Matrix3cd rho = u * prepared[j] * u.adjoint();
      dephase(rho, p.duration_us, noise.t2_us);
      mean += rho;
    }
    mean /= static_cast<double>(prepared.size());
    mean = 0.5 * (mean + mean.adjoint()).eval();
    const CountSample s =
        simulate_counts(DensityMatrix::trusted(mean, Basis::Zeeman), m, derive_seed(seed, Stream::Counts, k), offset);
    d.signal.push_back(s.signal);
    d.signal_err.push_back(s.signal_err);
  }
  return d;
}

double FitResult::evaluate(double chi) const { return offset + amplitude * std::cos(chi - phase); }

FitResult fit_sinusoid(const SweepData& d) {
  d.validate();
  check_sweep_grid(d.chi);

  const auto n = static_cast<Eigen::Index>(d.size());
  Eigen::MatrixXd x(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = 1.0 / d.signal_err[k];
    x(k, 0) = w;
    x(k, 1) = w * std::cos(d.chi[k]);
    x(k, 2) = w * std::sin(d.chi[k]);
    y(k) = w * d.signal[k];
  }

  const Eigen::Matrix3d normal = x.transpose() * x;
  Eigen::LDLT<Eigen::Matrix3d> ldlt(normal);
  const Eigen::Vector3d diag = normal.diagonal();
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-12 || !diag.allFinite()) {
    throw NumericalFailure("fit_sinusoid: normal equations are singular (rcond " + std::to_string(ldlt.rcond()) +
                           ")");
  }
  const Eigen::Vector3d beta = ldlt.solve(x.transpose() * y);
  const Eigen::Matrix3d cov = ldlt.solve(Eigen::Matrix3d::Identity());
  const double chi2 = (x * beta - y).squaredNorm();
  if (!beta.allFinite() || !cov.allFinite()) {
    throw NumericalFailure("fit_sinusoid: non-finite solution, chi^2 = " + std::to_string(chi2));
  }

  const double a = beta(1);
  const double b = beta(2);
  FitResult f;
  f.offset = beta(0);
  f.amplitude = std::hypot(a, b);
  f.phase = std::atan2(b, a);
  f.offset_err = std::sqrt(cov(0, 0));
  if (f.amplitude > 0.0) {
    const double var = (a * a * cov(1, 1) + b * b * cov(2, 2) + 2.0 * a * b * cov(1, 2)) / (a * a + b * b);
    f.amplitude_err = std::sqrt(std::max(var, 0.0));
  } else {
    f.amplitude_err = std::sqrt(0.5 * (cov(1, 1) + cov(2, 2)));
  }
  f.point_estimate = f.evaluate(kTwoPi);
  f.point_err = std::sqrt(f.amplitude_err * f.amplitude_err + f.offset_err * f.offset_err);
  f.chi_squared = chi2;
  f.out_of_range = f.point_estimate < -0.05 || f.point_estimate > 1.05;
  return f;
}

namespace {

Measurement measure(PulseSequence program, const Protocol& protocol, const NoiseParams& noise,
                    const ReadoutModel& m, std::uint64_t seed) {
  Measurement out;
  const std::vector<double> grid = protocol.grid.values();
  out.data = chi_sweep(program, grid, noise, m, seed, protocol.chi_rabi_mhz, protocol.nv);
  out.fit = fit_sinusoid(out.data);
  out.value = out.fit.point_estimate;
  out.error = out.fit.point_err;
  out.program = std::move(program);
  return out;
}

void check_index(int i) {
  if (i < 1 || i > kCycleLength) throw InvalidInput("observable index must be in 1..5");
}

}  // namespace

Measurement overlap_experiment(const Direction& first, const Direction& second, const Protocol& protocol,
                               const NoiseParams& noise, const ReadoutModel& m, std::uint64_t seed) {
  PulseSequence program = compile_prep(second, protocol.compile, protocol.nv);
  program.append(invert_sequence(compile_prep(first, protocol.compile, protocol.nv)));
  return measure(std::move(program), protocol, noise, m, seed);
}

Measurement overlap_experiment(int i, const PentagramSet& set, const Protocol& protocol, const NoiseParams& noise,
                               const ReadoutModel& m, std::uint64_t seed) {
  check_index(i);
  return overlap_experiment(set.directions[i - 1], set.directions[next_index(i - 1)], protocol, noise, m, seed);
}

Measurement observable_experiment(int i, const PentagramSet& set, const Protocol& protocol,
                                  const NoiseParams& noise, const ReadoutModel& m, std::uint64_t seed) {
  check_index(i);
  PulseSequence program = compile_prep(set.directions[i - 1], protocol.compile, protocol.nv);
  if (protocol.echo_tau_us > 0.0) program.push_back(Echo{protocol.echo_tau_us});
  return measure(std::move(program), protocol, noise, m, seed);
}

std::string to_csv(const SweepData& d) {
  d.validate();
  std::string out = "chi_rad,signal,signal_err\n";
  for (std::size_t k = 0; k < d.size(); ++k) {
    out += fmt17(d.chi[k]) + ',' + fmt17(d.signal[k]) + ',' + fmt17(d.signal_err[k]) + '\n';
  }
  return out;
}

SweepData parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("line 1", "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "chi_rad,signal,signal_err") throw ConfigError("line 1", "unexpected CSV header '" + line + "'");

  SweepData d;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    std::array<double, 3> v{};
    std::size_t pos = 0;
    for (int c = 0; c < 3; ++c) {
      const std::size_t comma = line.find(',', pos);
      if ((c < 2) != (comma != std::string::npos)) throw ConfigError(where, "expected 3 comma-separated fields");
      const std::string field = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        v[c] = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ConfigError(where, "not a number: '" + field + "'");
      }
      pos = comma + 1;
    }
    d.chi.push_back(v[0]);
    d.signal.push_back(v[1]);
    d.signal_err.push_back(v[2]);
  }
  try {
    d.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError("csv", e.what());
  }
  return d;
}

}  // namespace kcbs
