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

#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"
#include "test_support.hpp"

namespace kcbs {
namespace {

std::array<Estimate, 5> five(double v, double e) {
  std::array<Estimate, 5> out;
  out.fill(Estimate{v, e});
  return out;
}

std::array<double, 5> five(double v) {
  std::array<double, 5> out;
  out.fill(v);
  return out;
}

TEST(KcbsSum, QuadratureErrors) {
  const Estimate s = kcbs_sum(five(0.4392, 0.01118));
  EXPECT_NEAR(s.value, 2.196, 1e-12);
  EXPECT_NEAR(s.error, std::sqrt(5.0) * 0.01118, 1e-15);
  EXPECT_NEAR(s.error, 0.025, 1e-4);

  const Estimate ideal = kcbs_sum(five(1.0 / std::sqrt(5.0), 0.0));
  EXPECT_NEAR(ideal.value, std::sqrt(5.0), 1e-15);
  EXPECT_EQ(ideal.error, 0.0);

  const Estimate zero = kcbs_sum(five(0.0, 0.0));
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_EQ(zero.error, 0.0);

  const std::array<Estimate, 4> four{};
  EXPECT_THROW(kcbs_sum(four), InvalidInput);
}

TEST(SigmaViolation, Arithmetic) {
  EXPECT_NEAR(sigma_violation({2.196, 0.025}), 7.84, 1e-2);
  EXPECT_NEAR(sigma_violation({2.196, 0.025}), 0.196 / 0.025, 1e-12);
  EXPECT_NEAR(sigma_violation({2.0, 0.025}), 0.0, 1e-15);
  EXPECT_THROW(sigma_violation({2.236, 0.0}), InvalidInput);
}

TEST(Epsilon, Mean) {
  EXPECT_NEAR(epsilon(five(0.0020)), 0.0020, 1e-15);
  EXPECT_EQ(epsilon(five(0.0)), 0.0);
  EXPECT_NEAR(epsilon(std::array<double, 5>{0.01, 0, 0, 0, 0}), 0.002, 1e-15);
  EXPECT_THROW(epsilon(std::array<double, 5>{0.01, -1e-3, 0, 0, 0}), InvalidInput);
}

TEST(RobustBound, Examples) {
  const double li = 0.4392;
  EXPECT_NEAR(robust_bound(five(li), 0.0020), 2.196 - std::sqrt(5 * 0.0020 * 5 * li * li), 1e-12);
  EXPECT_NEAR(robust_bound(five(li), 0.0020), 2.098, 1e-3);
  EXPECT_NEAR(robust_bound(five(1.0 / std::sqrt(5.0)), 0.0020), 2.1360680, 1e-7);
  EXPECT_THROW(robust_bound(five(1.2), 0.0), InvalidInput);
  EXPECT_THROW(robust_bound(five(0.4), -0.1), InvalidInput);
}

TEST(RobustBound, NoPenaltyWithoutOverlap) {
  const std::array<double, 5> li{0.1, 0.5, 0.3, 0.9, 0.0};
  EXPECT_EQ(robust_bound(li, 0.0), 0.1 + 0.5 + 0.3 + 0.9 + 0.0);
}

TEST(RobustBound, NonIncreasingInEpsilon) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 5> li{};
    for (double& x : li) x = u(rng);
    double prev = robust_bound(li, 0.0);
    for (int k = 1; k <= 100; ++k) {
      const double cur = robust_bound(li, 0.001 * k);
      EXPECT_LE(cur, prev);
      prev = cur;
    }
  }
}

TEST(CauchySchwarz, HoldsForRandomStates) {
  std::mt19937_64 rng(52);
  const PentagramSet set = build_pentagram();
  // Also a perturbed set so the cross terms are not identically zero.
  PentagramSet tilted = set;
  tilted.directions[3] = Direction::spherical(set.theta + 0.2, set.phis[3] - 0.1);
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix rho = trial % 2 == 0 ? testing::random_density(rng)
                                             : DensityMatrix::pure(testing::random_state(rng));
    EXPECT_TRUE(cauchy_schwarz_check(rho, set));
    EXPECT_TRUE(cauchy_schwarz_check(rho, tilted));
  }
  EXPECT_TRUE(cauchy_schwarz_check(DensityMatrix::pure(psi_state(set)), set));
}

TEST(CauchySchwarz, MaximallyMixedCrossTermsAreDotProductsOverThree) {
  const PentagramSet set = build_pentagram();
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(Basis::Cartesian);
  EXPECT_TRUE(cauchy_schwarz_check(mixed, set));
  // |<l_i| 1/3 |l_j>| = |l_i . l_j| / 3 against <L_i> = 1/3.
  for (int i = 0; i < 5; ++i) {
    const double d = std::abs(set.directions[i].dot(set.directions[(i + 2) % 5]));
    const Vector3cd a = neutrally_polarized_state(set.directions[i]).amplitudes();
    const Vector3cd b = neutrally_polarized_state(set.directions[(i + 2) % 5]).amplitudes();
    EXPECT_NEAR(std::abs(a.dot(mixed.matrix() * b)), d / 3.0, 1e-12);
  }
}

TEST(CauchySchwarz, DetectsViolatingOperator) {
  // Not a state: a coherence larger than the populations allow.
  const PentagramSet set = build_pentagram();
  const Vector3cd a = neutrally_polarized_state(set.directions[0]).amplitudes();
  const Vector3cd b = neutrally_polarized_state(set.directions[1]).amplitudes();
  const Matrix3cd bad = Matrix3cd::Identity() / 3.0 + 0.5 * (a * b.adjoint() + b * a.adjoint());
  EXPECT_FALSE(cauchy_schwarz_check(DensityMatrix::trusted(bad, Basis::Cartesian), set));
}

TEST(Report, FieldsAndInvariants) {
  const auto li = five(0.4392, 0.01118);
  const std::array<Estimate, 5> ov{{{0.002, 0.006}, {0.001, 0.006}, {-0.001, 0.006}, {0.004, 0.006}, {0.003, 0.006}}};
  const ExperimentReport r = make_report(li, ov);
  EXPECT_NEAR(r.sum.value, 2.196, 1e-12);
  EXPECT_NEAR(r.sigma, 0.196 / r.sum.error, 1e-12);
  // Raw estimates are averaged; only the mean is clipped.
  EXPECT_NEAR(r.epsilon.value, (0.002 + 0.001 - 0.001 + 0.004 + 0.003) / 5, 1e-15);
  EXPECT_NEAR(r.epsilon.error, std::sqrt(5 * 0.006 * 0.006) / 5, 1e-15);
  EXPECT_NEAR(r.robust_bound, robust_bound(five(0.4392), r.epsilon.value), 1e-12);
  EXPECT_LE(r.robust_bound, r.sum.value);
  EXPECT_EQ(r.classical_bound, 2.0);
  EXPECT_NEAR(r.quantum_ideal, std::sqrt(5.0), 1e-15);
  EXPECT_TRUE(r.violates());
}

TEST(Report, NegativeMeanOverlapClipsToZero) {
  const ExperimentReport r = make_report(five(0.44, 0.011), five(-0.003, 0.005));
  EXPECT_EQ(r.epsilon.value, 0.0);
  EXPECT_NEAR(r.robust_bound, r.sum.value, 1e-15);
}

TEST(Report, ZeroErrorGivesUnboundedSigma) {
  const ExperimentReport r = make_report(five(1.0 / std::sqrt(5.0), 0.0), five(0.0, 0.0));
  EXPECT_TRUE(std::isinf(r.sigma));
  EXPECT_NEAR(r.robust_bound, std::sqrt(5.0), 1e-15);
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_TRUE(j["sigma"].is_null());
}

TEST(Report, JsonHasDocumentedFields) {
  const ExperimentReport r = make_report(five(0.44, 0.011), five(0.001, 0.005));
  const std::string text = to_json(r);
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"li", "li_err", "epsilon", "sum", "sum_err", "sigma", "robust_bound", "classical_bound",
                          "quantum_ideal"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  ASSERT_EQ(j["li"].size(), 5u);
  EXPECT_DOUBLE_EQ(j["li"][2].get<double>(), 0.44);
  EXPECT_DOUBLE_EQ(j["sum"].get<double>(), r.sum.value);
  EXPECT_EQ(text, to_json(r));
  EXPECT_EQ(text.back(), '\n');
}

}  // namespace
}  // namespace kcbs
