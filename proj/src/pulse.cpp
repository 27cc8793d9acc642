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

#include "kcbs/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kcbs/random.hpp"

namespace kcbs {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kPlus = static_cast<int>(ZeemanLevel::Plus);
constexpr int kZero = static_cast<int>(ZeemanLevel::Zero);
constexpr int kMinus = static_cast<int>(ZeemanLevel::Minus);

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// exp(-2 pi i H t) for Hermitian H via its eigendecomposition.
Matrix3cd propagator(const Matrix3cd& h, double t_us) {
  if (t_us == 0.0) return Matrix3cd::Identity();
  Eigen::SelfAdjointEigenSolver<Matrix3cd> es(h);
  const Eigen::Vector3d& lambda = es.eigenvalues();
  Vector3cd phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::polar(1.0, -kTwoPi * lambda(k) * t_us);
  const Matrix3cd& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

/// Static field shift enters as +delta on |+1> and -delta on |-1>.
Matrix3cd drive_hamiltonian(const Pulse& p, double delta, const NvParams& nv) {
  Drive d1;
  Drive d2;
  Drive& active = p.channel == Channel::MW1 ? d1 : d2;
  active = Drive{p.rabi_mhz, p.phase_rad, p.detuning_mhz};
  d1.detuning_mhz -= delta;
  d2.detuning_mhz += delta;
  return rotating_frame_hamiltonian(nv, d1, d2).matrix();
}

Matrix3cd free_hamiltonian(double delta, const NvParams& nv) {
  return rotating_frame_hamiltonian(nv, Drive{0.0, 0.0, -delta}, Drive{0.0, 0.0, +delta}).matrix();
}

const Matrix3cd& refocus_swap() {
  static const Matrix3cd p = [] {
    Matrix3cd m = Matrix3cd::Zero();
    m(kPlus, kMinus) = 1.0;
    m(kMinus, kPlus) = 1.0;
    m(kZero, kZero) = 1.0;
    return m;
  }();
  return p;
}

void check_element(const SequenceElement& e) {
  std::visit(Overloaded{
                 [](const Pulse& p) {
                   if (!(p.rabi_mhz >= 0.0) || !(p.duration_us >= 0.0) || !std::isfinite(p.phase_rad) ||
                       !std::isfinite(p.detuning_mhz) || !std::isfinite(p.rabi_mhz) ||
                       !std::isfinite(p.duration_us)) {
                     throw InvalidInput("pulse needs finite rabi >= 0 and duration >= 0");
                   }
                 },
                 [](const Delay& d) {
                   if (!(d.duration_us >= 0.0) || !std::isfinite(d.duration_us)) {
                     throw InvalidInput("delay duration must be finite and >= 0");
                   }
                 },
                 [](const Echo& e) {
                   if (!(e.tau_us >= 0.0) || !std::isfinite(e.tau_us)) {
                     throw InvalidInput("echo delay must be finite and >= 0");
                   }
                 },
             },
             e);
}

double wrap_phase(double phi) { return std::remainder(phi, kTwoPi); }

}  // namespace

double Pulse::area() const { return kTwoPi * rabi_mhz * duration_us; }

Pulse pulse_with_area(Channel channel, double rabi_mhz, double area_rad, double phase_rad) {
  if (!(rabi_mhz > 0.0)) throw InvalidInput("pulse_with_area: Rabi frequency must be positive");
  if (!(area_rad >= 0.0)) throw InvalidInput("pulse_with_area: rotation angle must be non-negative");
  return Pulse{channel, rabi_mhz, phase_rad, area_rad / (kTwoPi * rabi_mhz), 0.0};
}

double element_duration(const SequenceElement& e) {
  return std::visit(Overloaded{
                        [](const Pulse& p) { return p.duration_us; },
                        [](const Delay& d) { return d.duration_us; },
                        [](const Echo& e) { return 2.0 * e.tau_us; },
                    },
                    e);
}

PulseSequence::PulseSequence(std::initializer_list<SequenceElement> elements) {
  for (const auto& e : elements) push_back(e);
}

void PulseSequence::push_back(const SequenceElement& e) {
  check_element(e);
  elements_.push_back(e);
}

void PulseSequence::append(const PulseSequence& other) {
  elements_.insert(elements_.end(), other.elements_.begin(), other.elements_.end());
}

double PulseSequence::total_duration_us() const {
  double t = 0.0;
  for (const auto& e : elements_) t += element_duration(e);
  return t;
}

PulseSequence concat(PulseSequence a, const PulseSequence& b) {
  a.append(b);
  return a;
}

NoiseParams NoiseParams::noiseless() {
  NoiseParams n;
  n.t2_star_us = std::numeric_limits<double>::infinity();
  n.t2_us = std::numeric_limits<double>::infinity();
  n.detuning_sigma_mhz = 0.0;
  n.ensemble_size = 1;
  return n;
}

void NoiseParams::validate() const {
  if (!(t2_star_us > 0.0) || !(t2_us > 0.0)) throw InvalidInput("coherence times must be positive");
  if (!(detuning_sigma_mhz >= 0.0) || !std::isfinite(detuning_sigma_mhz)) {
    throw InvalidInput("detuning_sigma must be finite and >= 0");
  }
  if (ensemble_size < 1) throw InvalidInput("ensemble_size must be >= 1");
}

Matrix3cd pulse_unitary(const Pulse& p, double static_detuning_mhz, const NvParams& nv) {
  return propagator(drive_hamiltonian(p, static_detuning_mhz, nv), p.duration_us);
}

Matrix3cd free_unitary(double duration_us, double static_detuning_mhz, const NvParams& nv) {
  return propagator(free_hamiltonian(static_detuning_mhz, nv), duration_us);
}

Matrix3cd element_unitary(const SequenceElement& e, double static_detuning_mhz, const NvParams& nv) {
  return std::visit(Overloaded{
                        [&](const Pulse& p) { return pulse_unitary(p, static_detuning_mhz, nv); },
                        [&](const Delay& d) { return free_unitary(d.duration_us, static_detuning_mhz, nv); },
                        [&](const Echo& e) {
                          const Matrix3cd f = free_unitary(e.tau_us, static_detuning_mhz, nv);
                          const Matrix3cd& s = refocus_swap();
                          return Matrix3cd(s * f * s * f);
                        },
                    },
                    e);
}

Matrix3cd sequence_unitary(const PulseSequence& s, double static_detuning_mhz, const NvParams& nv) {
  Matrix3cd u = Matrix3cd::Identity();
  for (const auto& e : s) u = element_unitary(e, static_detuning_mhz, nv) * u;
  return u;
}

double preparation_fidelity(const PulseSequence& s, const Direction& target, const NvParams& nv) {
  const Vector3cd out = sequence_unitary(s, 0.0, nv).col(kZero);
  const Vector3cd want = basis_change(neutrally_polarized_state(target), Basis::Zeeman).amplitudes();
  return std::norm(want.dot(out));
}

// ---------------------------------------------------------------------------
// Synthesis

namespace {

struct PrepAngles {
  double area1 = 0.0;  // MW1 rotation angle
  double phase1 = 0.0;
  double area2 = 0.0;  // MW2 rotation angle
  double phase2 = 0.0;
};

// A resonant pulse of area a and phase p on |0> gives
//   cos(a/2)|0> - i e^{-ip} sin(a/2)|m>,
// so MW1 then MW2 reaches
//   c0 = cos(a1/2) cos(a2/2), c- = -i e^{-ip1} sin(a1/2), c+ = -i e^{-ip2} cos(a1/2) sin(a2/2).
PrepAngles analytic_angles(const Vector3cd& zeeman) {
  Vector3cd c = zeeman;
  if (std::abs(c(kZero)) > 1e-15) c *= std::polar(1.0, -std::arg(c(kZero)));
  const std::complex<double> i(0.0, 1.0);

  PrepAngles a;
  const double minus_mag = std::min(1.0, std::abs(c(kMinus)));
  const double plus_mag = std::abs(c(kPlus));
  a.area1 = 2.0 * std::asin(minus_mag);
  a.phase1 = minus_mag > 1e-15 ? -std::arg(i * c(kMinus)) : 0.0;
  a.area2 = 2.0 * std::atan2(plus_mag, std::max(0.0, c(kZero).real()));
  a.phase2 = plus_mag > 1e-15 ? -std::arg(i * c(kPlus)) : 0.0;
  return a;
}

PulseSequence sequence_from(const PrepAngles& a, const CompileOptions& o) {
  PulseSequence s;
  constexpr double kNegligibleArea = 1e-14;
  if (a.area1 > kNegligibleArea) {
    s.push_back(pulse_with_area(Channel::MW1, o.mw1_rabi_mhz, a.area1, wrap_phase(a.phase1)));
  }
  if (a.area2 > kNegligibleArea) {
    s.push_back(pulse_with_area(Channel::MW2, o.mw2_rabi_mhz, a.area2, wrap_phase(a.phase2)));
  }
  return s;
}

// Residual of the prepared ket against the target, with the global phase
// removed. Six real components.
Eigen::Matrix<double, 6, 1> prep_residual(const PrepAngles& a, const Vector3cd& target, const CompileOptions& o,
                                          const NvParams& nv) {
  // Areas can go negative during the search; fold them back onto a
  // phase flip so durations stay non-negative.
  auto pulse = [&](Channel ch, double rabi, double area, double phase) {
    if (area < 0.0) {
      area = -area;
      phase += std::numbers::pi;
    }
    return pulse_with_area(ch, rabi, area, phase);
  };
  const Matrix3cd u = pulse_unitary(pulse(Channel::MW2, o.mw2_rabi_mhz, a.area2, a.phase2), 0.0, nv) *
                      pulse_unitary(pulse(Channel::MW1, o.mw1_rabi_mhz, a.area1, a.phase1), 0.0, nv);
  Vector3cd out = u.col(kZero);
  const std::complex<double> overlap = target.dot(out);
  if (std::abs(overlap) > 0.0) out *= std::polar(1.0, -std::arg(overlap));
  const Vector3cd diff = out - target;
  Eigen::Matrix<double, 6, 1> r;
  for (int k = 0; k < 3; ++k) {
    r(2 * k) = diff(k).real();
    r(2 * k + 1) = diff(k).imag();
  }
  return r;
}

PrepAngles refine(PrepAngles a, const Vector3cd& target, const CompileOptions& o, const NvParams& nv) {
  using Vec4 = Eigen::Matrix<double, 4, 1>;
  auto pack = [](const PrepAngles& p) { return Vec4(p.area1, p.phase1, p.area2, p.phase2); };
  auto unpack = [](const Vec4& v) { return PrepAngles{v(0), v(1), v(2), v(3)}; };

  Vec4 x = pack(a);
  auto r = prep_residual(a, target, o, nv);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  constexpr double kStep = 1e-7;

  for (int it = 0; it < o.max_iterations && cost > 1e-26; ++it) {
    Eigen::Matrix<double, 6, 4> jac;
    for (int k = 0; k < 4; ++k) {
      Vec4 xp = x;
      Vec4 xm = x;
      xp(k) += kStep;
      xm(k) -= kStep;
      jac.col(k) = (prep_residual(unpack(xp), target, o, nv) - prep_residual(unpack(xm), target, o, nv)) / (2 * kStep);
    }
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Vec4 g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      Eigen::Matrix4d damped = jtj;
      damped.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Vec4 step = damped.ldlt().solve(-g);
      const Vec4 xn = x + step;
      const auto rn = prep_residual(unpack(xn), target, o, nv);
      if (rn.squaredNorm() < cost) {
        x = xn;
        r = rn;
        cost = rn.squaredNorm();
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
  }

  PrepAngles out = unpack(x);
  if (out.area1 < 0.0) {
    out.area1 = -out.area1;
    out.phase1 += std::numbers::pi;
  }
  if (out.area2 < 0.0) {
    out.area2 = -out.area2;
    out.phase2 += std::numbers::pi;
  }
  return out;
}

}  // namespace

PulseSequence compile_prep(const Direction& target, const CompileOptions& options, const NvParams& nv) {
  if (!(options.mw1_rabi_mhz > 0.0) || !(options.mw2_rabi_mhz > 0.0)) {
    throw InvalidInput("compile_prep: Rabi frequencies must be positive");
  }
  const Vector3cd want = basis_change(neutrally_polarized_state(target), Basis::Zeeman).amplitudes();

  PrepAngles angles = analytic_angles(want);
  PulseSequence seq = sequence_from(angles, options);
  double fidelity = preparation_fidelity(seq, target, nv);
  if (fidelity >= 1.0 - 1e-13) return seq;

  angles = refine(angles, want, options, nv);
  PulseSequence polished = sequence_from(angles, options);
  const double polished_fidelity = preparation_fidelity(polished, target, nv);
  if (polished_fidelity > fidelity) {
    seq = std::move(polished);
    fidelity = polished_fidelity;
  }
  if (fidelity < options.fidelity_target) {
    throw SynthesisFailure("compile_prep: fidelity " + std::to_string(fidelity) + " below target", fidelity);
  }
  return seq;
}

PulseSequence invert_sequence(const PulseSequence& s) {
  PulseSequence out;
  const auto& el = s.elements();
  for (auto it = el.rbegin(); it != el.rend(); ++it) {
    if (const auto* p = std::get_if<Pulse>(&*it)) {
      Pulse q = *p;
      q.phase_rad = wrap_phase(q.phase_rad + std::numbers::pi);
      out.push_back(q);
    } else {
      out.push_back(*it);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Noisy evolution

void dephase(Matrix3cd& rho, double dt_us, double t2_us) {
  if (dt_us <= 0.0 || std::isinf(t2_us)) return;
  const double f = std::exp(-dt_us / t2_us);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r != c) rho(r, c) *= f;
    }
  }
}

std::vector<double> ensemble_detunings(const NoiseParams& noise, std::uint64_t seed) {
  noise.validate();
  if (noise.detuning_sigma_mhz == 0.0) return {0.0};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(noise.ensemble_size));
  for (int k = 0; k < noise.ensemble_size; ++k) {
    Rng rng(derive_seed(seed, Stream::Ensemble, static_cast<std::uint64_t>(k)));
    std::normal_distribution<double> gauss(0.0, noise.detuning_sigma_mhz);
    out.push_back(gauss(rng));
  }
  return out;
}

std::vector<Matrix3cd> evolve_members(const PulseSequence& s, const Matrix3cd& rho0, const NoiseParams& noise,
                                      const std::vector<double>& detunings, const NvParams& nv) {
  std::vector<Matrix3cd> out;
  out.reserve(detunings.size());
  for (double delta : detunings) {
    Matrix3cd rho = rho0;
    for (const auto& e : s) {
      const Matrix3cd u = element_unitary(e, delta, nv);
      rho = u * rho * u.adjoint();
      dephase(rho, element_duration(e), noise.t2_us);
    }
    out.push_back(rho);
  }
  return out;
}

DensityMatrix apply_sequence(const PulseSequence& s, const DensityMatrix& rho0, const NoiseParams& noise,
                             std::uint64_t seed, const NvParams& nv) {
  const auto members = evolve_members(s, rho0.matrix_in(Basis::Zeeman), noise, ensemble_detunings(noise, seed), nv);
  Matrix3cd mean = Matrix3cd::Zero();
  for (const auto& m : members) mean += m;
  mean /= static_cast<double>(members.size());
  mean = 0.5 * (mean + mean.adjoint()).eval();
  return DensityMatrix::trusted(mean, Basis::Zeeman);
}

// ---------------------------------------------------------------------------
// Broadening calibration

double rabi_envelope(double sigma_mhz, double rabi_mhz, double t_us) {
  if (!(rabi_mhz > 0.0)) throw InvalidInput("rabi_envelope: Rabi frequency must be positive");
  if (sigma_mhz == 0.0 || t_us == 0.0) return 1.0;

  // Simpson quadrature of E[(W0^2/W^2) exp(2 pi i (W - W0) t)] over the
  // Gaussian, W = sqrt(W0^2 + d^2).
  constexpr int kIntervals = 8000;
  const double half_width = 8.0 * sigma_mhz;
  const double h = 2.0 * half_width / kIntervals;
  std::complex<double> num = 0.0;
  double den = 0.0;
  for (int k = 0; k <= kIntervals; ++k) {
    const double d = -half_width + k * h;
    const double w = (k == 0 || k == kIntervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    const double gauss = std::exp(-0.5 * d * d / (sigma_mhz * sigma_mhz));
    const double rw = std::hypot(rabi_mhz, d);
    const double weight = w * gauss * (rabi_mhz * rabi_mhz) / (rw * rw);
    // W - W0 written to avoid cancellation.
    const double dw = d * d / (rw + rabi_mhz);
    num += weight * std::polar(1.0, kTwoPi * dw * t_us);
    den += weight;
  }
  return std::abs(num) / den;
}

double calibrate_detuning_sigma(double t2_star_us, double rabi_mhz) {
  if (!(t2_star_us > 0.0) || !(rabi_mhz > 0.0)) {
    throw InvalidInput("calibrate_detuning_sigma: times and Rabi frequency must be positive");
  }
  if (std::isinf(t2_star_us)) return 0.0;
  const double target = std::exp(-1.0);
  double lo = 0.0;
  double hi = 0.1 * rabi_mhz;
  int grow = 0;
  while (rabi_envelope(hi, rabi_mhz, t2_star_us) > target) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 40) throw NumericalFailure("calibrate_detuning_sigma: could not bracket the 1/e point");
  }
  for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (rabi_envelope(mid, rabi_mhz, t2_star_us) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace kcbs
