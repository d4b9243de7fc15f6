// Copyright 2026 The QLDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qldp/ldp.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qldp/divergence.hpp"

namespace qldp {
namespace {

AffineChanneld Qubit(const Eigen::Matrix3d& a, const Eigen::Vector3d& c) {
  return AffineChanneld(2, a, c);
}

// Brute-force sup over pairs in the ball: for fixed direction u the pair
// problem splits, so max over u of (1+g)|A^T u| + (1-g) c.u by grid.
double SupOracle(const AffineChanneld& ch, double eps) {
  const double g = std::exp(eps);
  return testing::grid_sphere_max([&](const Eigen::Vector3d& u) {
    return (1 + g) * (ch.A.transpose() * u).norm() + (1 - g) * ch.c.dot(u);
  }, 150);
}

TEST(LdpSupTest, IdentityChannel) {
  for (double eps : {0.0, 0.5, 2.0}) {
    EXPECT_NEAR(ldp_sup(AffineChanneld::identity(2), eps).value, 1 + std::exp(eps), 1e-14);
    EXPECT_FALSE(certify(AffineChanneld::identity(2), eps).verdict);
  }
}

TEST(LdpSupTest, ConstantChannel) {
  const auto ch = Qubit(Eigen::Matrix3d::Zero(), Eigen::Vector3d::Zero());
  EXPECT_EQ(ldp_sup(ch, 1.0).value, 0.0);
  EXPECT_TRUE(certify(ch, 0.0).verdict);
}

TEST(LdpSupTest, DepolarizingIsBoundaryTight) {
  for (double eps : {0.05, 0.5, 1.0, 3.0}) {
    EXPECT_NEAR(ldp_sup(depolarizing(2, eps), eps).value, std::expm1(eps),
                1e-12 * (1 + std::expm1(eps)));
  }
}

TEST(LdpSupTest, AgreesWithGridOracleWithOffset) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 12; ++i) {
    const auto ch = Qubit(testing::random_matrix(rng, 3, 3, 0.3),
                          testing::random_matrix(rng, 3, 1, 0.3));
    for (double eps : {0.2, 1.5}) {
      const double expected = SupOracle(ch, eps);
      EXPECT_NEAR(ldp_sup(ch, eps).value, expected, 1e-9 * (1 + expected));
    }
  }
}

TEST(LdpSupTest, DegenerateTopSingularValues) {
  // Offset orthogonal to the repeated top singular directions.
  const Eigen::Matrix3d a = Eigen::Vector3d(0.5, 0.5, 0.1).asDiagonal();
  for (double cz : {0.0, 0.05, 0.4}) {
    const auto ch = Qubit(a, Eigen::Vector3d(0, 0, cz));
    for (double eps : {0.01, 0.3, 2.0}) {
      const double expected = SupOracle(ch, eps);
      const LdpSup sup = ldp_sup(ch, eps);
      EXPECT_NEAR(sup.value, expected, 1e-9 * (1 + expected));
      const double at_direction = (1 + std::exp(eps)) * (a * sup.direction).norm() +
                                  (1 - std::exp(eps)) * cz * sup.direction(2);
      EXPECT_NEAR(at_direction, sup.value, 1e-12 * (1 + expected));
    }
  }
}

TEST(LdpSupTest, SupDominatesSampledPairs) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> unit;
  const auto ch = Qubit(testing::random_matrix(rng, 3, 3, 0.3),
                        testing::random_matrix(rng, 3, 1, 0.2));
  const double sup = ldp_sup(ch, 0.7).value;
  for (int i = 0; i < 2000; ++i) {
    Eigen::Vector3d w = testing::random_matrix(rng, 3, 1);
    Eigen::Vector3d v = testing::random_matrix(rng, 3, 1);
    w *= std::cbrt(unit(rng)) / w.norm();
    v *= std::cbrt(unit(rng)) / v.norm();
    EXPECT_LE(ldp_lhs(ch, 0.7, w, v), sup + 1e-12);
  }
}

TEST(LdpSupTest, QutritUnsupported) {
  try {
    ldp_sup(depolarizing(3, 1.0), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
}

TEST(CertifyTest, DepolarizingAtItsOwnBudget) {
  const auto cert = certify(depolarizing(2, 0.7), 0.7);
  EXPECT_TRUE(cert.verdict);
  EXPECT_LE(std::abs(cert.margin), 1e-9);
}

TEST(CertifyTest, DepolarizingAtHalfBudget) {
  const auto cert = certify(depolarizing(2, 0.7), 0.35);
  EXPECT_FALSE(cert.verdict);
  EXPECT_GT(cert.margin, 0.0);
}

TEST(CertifyTest, ZeroBudgetConstantChannel) {
  const auto cert = certify(Qubit(Eigen::Matrix3d::Zero(), Eigen::Vector3d(0.5, 0, 0)), 0.0);
  EXPECT_EQ(cert.sup_value, 0.0);
  EXPECT_TRUE(cert.verdict);
}

TEST(CertifyTest, WitnessAttainsTheSupremum) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const auto ch = Qubit(testing::random_matrix(rng, 3, 3, 0.4),
                          testing::random_matrix(rng, 3, 1, 0.2));
    const auto cert = certify(ch, 0.4);
    EXPECT_NEAR(ldp_lhs(ch, 0.4, cert.witness_omega, cert.witness_nu), cert.sup_value,
                1e-9 * (1 + cert.sup_value));
    // E_gamma at the witness equals half the margin when positive.
    const double e = hockey_stick_qubit<double>(ch.A * cert.witness_omega + ch.c,
                                                ch.A * cert.witness_nu + ch.c,
                                                std::exp(0.4));
    EXPECT_NEAR(e, std::max(0.0, 0.5 * cert.margin), 1e-9);
  }
}

TEST(CertifyTest, RejectsNegativeBudget) {
  try {
    certify(depolarizing(2, 1.0), -1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidBudget);
  }
}

TEST(TightEpsilonTest, ScaledIdentity) {
  for (double p : {0.05, 0.3, 0.5, 0.9}) {
    const auto ch = Qubit((1 - p) * Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero());
    EXPECT_NEAR(tight_epsilon(ch), std::log((2 - p) / p), 1e-8);
  }
  EXPECT_NEAR(tight_epsilon(depolarizing(2, std::log(3.0))), std::log(3.0), 1e-8);
}

TEST(TightEpsilonTest, ConstantChannelIsZero) {
  EXPECT_EQ(tight_epsilon(Qubit(Eigen::Matrix3d::Zero(), Eigen::Vector3d(0.2, 0.1, 0))), 0.0);
}

TEST(TightEpsilonTest, IdentityDiverges) {
  try {
    tight_epsilon(AffineChanneld::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDiverged);
    EXPECT_TRUE(e.IsRegimeError());
  }
}

TEST(TightEpsilonTest, ResultIsTheFeasibilityThreshold) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 10; ++i) {
    const auto ch = Qubit(testing::random_matrix(rng, 3, 3, 0.2),
                          testing::random_matrix(rng, 3, 1, 0.1));
    const double eps = tight_epsilon(ch);
    EXPECT_LE(ldp_margin(ch, eps), 0.0);
    if (eps > 1e-6) {
      EXPECT_GT(ldp_margin(ch, eps - 1e-6), 0.0);
    }
  }
}

TEST(AuditTest, IdentityChannelRefuted) {
  const auto result = audit_by_sampling(AffineChanneld::identity(2), 1.0, 10000, 1);
  EXPECT_FALSE(result.consistent);
  EXPECT_GT(result.max_divergence, 0.0);
  EXPECT_EQ(result.samples, 10000);
  EXPECT_EQ(result.worst_omega.size(), 3);
}

TEST(AuditTest, DepolarizingConsistent) {
  for (int d : {2, 3}) {
    const auto result = audit_by_sampling(depolarizing(d, 1.0), 1.0, d == 2 ? 10000 : 1000, 2);
    EXPECT_TRUE(result.consistent) << "d=" << d;
    EXPECT_LE(result.max_divergence, 1e-9);
  }
}

TEST(AuditTest, FocusOnWitnessRefutes) {
  // Slightly over budget: random pairs rarely hit the violating region,
  // the witness pair does.
  const auto ch = Qubit(1.01 * depolarizing(2, 1.0).A, Eigen::Vector3d::Zero());
  const auto cert = certify(ch, 1.0);
  ASSERT_FALSE(cert.verdict);
  AuditOptions options;
  options.focus = {Vectord(cert.witness_omega), Vectord(cert.witness_nu)};
  const auto result = audit_by_sampling(ch, 1.0, 10, 5, options);
  EXPECT_FALSE(result.consistent);
  EXPECT_NEAR(result.max_divergence, 0.5 * cert.margin, 1e-12);
}

TEST(AuditTest, DeterministicForSeed) {
  const auto ch = Qubit(0.3 * Eigen::Matrix3d::Identity(), Eigen::Vector3d(0.1, 0, 0));
  const auto a = audit_by_sampling(ch, 0.5, 500, 77);
  const auto b = audit_by_sampling(ch, 0.5, 500, 77);
  EXPECT_EQ(a.max_divergence, b.max_divergence);
  EXPECT_EQ(a.worst_omega, b.worst_omega);
}

TEST(LdpSetTest, ConvexCombinationStaysPrivate) {
  std::mt19937_64 rng(25);
  const double eps = 0.8;
  auto random_private = [&]() {
    auto ch = Qubit(testing::random_matrix(rng, 3, 3, 0.3),
                    testing::random_matrix(rng, 3, 1, 0.1));
    const double margin = ldp_margin(ch, eps);
    if (margin > 0.0) {
      const double scale = std::expm1(eps) / (margin + std::expm1(eps)) * 0.999;
      ch.A *= scale;
      ch.c *= scale;
    }
    return ch;
  };
  for (int i = 0; i < 20; ++i) {
    const auto a = random_private();
    const auto b = random_private();
    ASSERT_LE(ldp_margin(a, eps), 0.0);
    ASSERT_LE(ldp_margin(b, eps), 0.0);
    const auto mix = Qubit(0.4 * a.A + 0.6 * b.A, 0.4 * a.c + 0.6 * b.c);
    EXPECT_LE(ldp_margin(mix, eps), 1e-12);
  }
}

}  // namespace
}  // namespace qldp
