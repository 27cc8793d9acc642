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

#include "kcbs/analysis.hpp"

#include <algorithm>
#include <limits>

#include "json.hpp"

namespace kcbs {
namespace {

void require_five(std::size_t n, const char* what) {
  if (n != kCycleLength) throw InvalidInput(std::string(what) + ": expected 5 values");
}

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

Estimate kcbs_sum(std::span<const Estimate> estimates) {
  require_five(estimates.size(), "kcbs_sum");
  Estimate s;
  double var = 0.0;
  for (const auto& e : estimates) {
    if (!(e.error >= 0.0)) throw InvalidInput("kcbs_sum: errors must be non-negative");
    s.value += e.value;
    var += e.error * e.error;
  }
  s.error = std::sqrt(var);
  return s;
}

double sigma_violation(const Estimate& sum) {
  if (!(sum.error > 0.0)) throw InvalidInput("sigma_violation: error must be positive");
  return (sum.value - kClassicalBound) / sum.error;
}

double epsilon(std::span<const double> overlaps) {
  require_five(overlaps.size(), "epsilon");
  double total = 0.0;
  for (double o : overlaps) {
    if (!(o >= 0.0)) throw InvalidInput("epsilon: overlaps must be non-negative");
    total += o;
  }
  return total / kCycleLength;
}

double robust_bound(std::span<const double> li, double eps) {
  require_five(li.size(), "robust_bound");
  if (!(eps >= 0.0)) throw InvalidInput("robust_bound: epsilon must be non-negative");
  double sum = 0.0;
  double products = 0.0;
  for (int i = 0; i < kCycleLength; ++i) {
    if (!(li[i] >= 0.0 && li[i] <= 1.0)) throw InvalidInput("robust_bound: <L_i> must lie in [0, 1]");
    sum += li[i];
    products += li[i] * li[next_index(i)];
  }
  return sum - std::sqrt(kCycleLength * eps * products);
}

bool cauchy_schwarz_check(const DensityMatrix& rho, const PentagramSet& set, double tol) {
  const Matrix3cd r = rho.matrix_in(Basis::Cartesian);
  for (int i = 0; i < kCycleLength; ++i) {
    const Vector3cd a = neutrally_polarized_state(set.directions[i]).amplitudes();
    const Vector3cd b = neutrally_polarized_state(set.directions[next_index(i)]).amplitudes();
    const double lhs = std::abs(a.dot(r * b));
    const double la = std::max(0.0, a.dot(r * a).real());
    const double lb = std::max(0.0, b.dot(r * b).real());
    if (lhs > std::sqrt(la * lb) + tol) return false;
  }
  return true;
}

ExperimentReport make_report(std::span<const Estimate> li, std::span<const Estimate> overlaps) {
  require_five(li.size(), "make_report li");
  require_five(overlaps.size(), "make_report overlaps");

  ExperimentReport r;
  std::array<double, kCycleLength> clipped_li{};
  double eps_sum = 0.0;
  double eps_var = 0.0;
  for (int i = 0; i < kCycleLength; ++i) {
    r.li[i] = li[i];
    r.overlaps[i] = overlaps[i];
    clipped_li[i] = std::clamp(li[i].value, 0.0, 1.0);
    eps_sum += overlaps[i].value;
    eps_var += overlaps[i].error * overlaps[i].error;
  }
  // Individual overlap estimates scatter around zero; average them as
  // measured and clip only the mean, so noise does not bias epsilon upwards.
  r.epsilon = {std::max(0.0, eps_sum / kCycleLength), std::sqrt(eps_var) / kCycleLength};
  r.sum = kcbs_sum(li);
  r.sigma = r.sum.error > 0.0 ? sigma_violation(r.sum) : std::numeric_limits<double>::infinity();
  // The penalty term uses the clamped <L_i>; the leading sum keeps the raw
  // estimates so that robust_bound <= sum always holds.
  const double penalty = robust_bound(clipped_li, 0.0) - robust_bound(clipped_li, r.epsilon.value);
  r.robust_bound = r.sum.value - penalty;
  return r;
}

std::string to_json(const ExperimentReport& r, int indent) {
  nlohmann::json j;
  auto values = [](const auto& arr) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : arr) a.push_back(number(e.value));
    return a;
  };
  auto errors = [](const auto& arr) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : arr) a.push_back(number(e.error));
    return a;
  };
  j["li"] = values(r.li);
  j["li_err"] = errors(r.li);
  j["overlaps"] = values(r.overlaps);
  j["overlaps_err"] = errors(r.overlaps);
  j["epsilon"] = number(r.epsilon.value);
  j["epsilon_err"] = number(r.epsilon.error);
  j["sum"] = number(r.sum.value);
  j["sum_err"] = number(r.sum.error);
  j["sigma"] = number(r.sigma);
  j["robust_bound"] = number(r.robust_bound);
  j["classical_bound"] = r.classical_bound;
  j["quantum_ideal"] = r.quantum_ideal;
  return j.dump(indent) + "\n";
}

}  // namespace kcbs
