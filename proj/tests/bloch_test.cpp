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

#include "qldp/bloch.hpp"

#include <gtest/gtest.h>

#include <random>
#include <thread>
#include <vector>

#include "oracles.hpp"

namespace qldp {
namespace {

using testing::CMat;

TEST(GeneratorsTest, QubitBasisIsPauliXYZ) {
  const auto& basis = generators(2);
  ASSERT_EQ(basis.size(), 3);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT((basis[k] - testing::pauli(k)).norm(), 1e-15) << "k=" << k;
  }
}

TEST(GeneratorsTest, OrthonormalAndTraceless) {
  for (int d = 2; d <= 6; ++d) {
    const auto& basis = generators(d);
    ASSERT_EQ(basis.size(), d * d - 1);
    for (int i = 0; i < basis.size(); ++i) {
      EXPECT_LT(std::abs(basis[i].trace()), 1e-14);
      EXPECT_LT(hermiticity_defect(basis[i]), 1e-15);
      for (int j = 0; j < basis.size(); ++j) {
        const std::complex<double> t = (basis[i] * basis[j]).trace();
        EXPECT_NEAR(t.real(), i == j ? 2.0 : 0.0, 1e-14);
        EXPECT_NEAR(t.imag(), 0.0, 1e-14);
      }
    }
  }
}

TEST(GeneratorsTest, RejectsSmallDimension) {
  for (int d : {-1, 0, 1}) {
    try {
      generators(d);
      FAIL() << "d=" << d;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidDimension);
    }
  }
}

TEST(GeneratorsTest, ConcurrentFirstAccessSharesOneInstance) {
  std::vector<const GeneratorBasisd*> seen(8, nullptr);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&seen, t] { seen[t] = &generators<double>(7); });
  }
  for (auto& th : threads) th.join();
  for (const auto* p : seen) EXPECT_EQ(p, seen[0]);
}

TEST(BlochRadiusTest, KnownValues) {
  EXPECT_DOUBLE_EQ(bloch_radius(2), 1.0);
  EXPECT_DOUBLE_EQ(bloch_radius(3), std::sqrt(4.0 / 3.0));
  EXPECT_DOUBLE_EQ(bloch_radius(4), std::sqrt(1.5));
}

TEST(ToDensityTest, MaximallyMixed) {
  const auto rho = to_density(BlochVectord(2, Vectord::Zero(3)));
  EXPECT_LT((rho.rho - CMat::Identity(2, 2) / 2.0).norm(), 1e-15);
}

TEST(ToDensityTest, ComputationalBasisState) {
  const auto rho = to_density(BlochVectord(2, Eigen::Vector3d(0, 0, 1)));
  CMat expected = CMat::Zero(2, 2);
  expected(0, 0) = 1.0;
  EXPECT_LT((rho.rho - expected).norm(), 1e-15);
}

TEST(ToDensityTest, MatchesHandWrittenPaulis) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Eigen::Vector3d w = testing::random_matrix(rng, 3, 1);
    w *= 0.99 * std::uniform_real_distribution<double>()(rng) / w.norm();
    const auto rho = to_density(BlochVectord(2, w));
    EXPECT_LT((rho.rho - testing::qubit_density(w)).norm(), 1e-15);
  }
}

TEST(ToDensityTest, QutritRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Vectord w = testing::random_matrix(rng, 8, 1);
    w *= 0.3 / w.norm();
    const auto rho = to_density(BlochVectord(3, w));
    EXPECT_GE(min_eigenvalue(rho.rho), 0.0);
    EXPECT_NEAR(rho.rho.trace().real(), 1.0, 1e-14);
    const auto back = from_density(rho);
    EXPECT_EQ(back.d, 3);
    EXPECT_LT((back.w - w).norm(), 1e-12);
  }
}

TEST(ToDensityTest, NotAStateCarriesEigenvalue) {
  try {
    to_density(BlochVectord(2, Eigen::Vector3d(0, 0, 1.5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAState);
    EXPECT_NEAR(e.value(), -0.25, 1e-14);
  }
}

TEST(ToDensityTest, QutritRadiusIsNotTheUnitBall) {
  // For d = 3 the ball of radius 1 contains non-states and the sphere of
  // radius r_3 contains them too; the eigenvalue check decides.
  Vectord w = Vectord::Zero(8);
  w(7) = -bloch_radius(3);  // the diagonal generator direction: a pure state
  EXPECT_NO_THROW(to_density(BlochVectord(3, w)));
  w(7) = bloch_radius(3);
  EXPECT_THROW(to_density(BlochVectord(3, w)), Error);
}

TEST(BlochVectorTest, LengthMismatch) {
  try {
    BlochVectord(3, Vectord::Zero(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(FromDensityTest, KnownStates) {
  const auto mixed = from_density(make_density<double>(CMat::Identity(2, 2) / 2.0));
  EXPECT_LT(mixed.w.norm(), 1e-15);
  CMat up = CMat::Zero(2, 2);
  up(0, 0) = 1.0;
  const auto z = from_density(make_density<double>(up));
  EXPECT_LT((z.w - Eigen::Vector3d(0, 0, 1)).norm(), 1e-15);
}

TEST(FromDensityTest, RandomQutritRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const CMat rho = testing::random_density(rng, 3);
    const auto v = from_density(make_density<double>(rho));
    EXPECT_LT((to_density(v).rho - rho).norm(), 1e-12);
  }
}

TEST(FromDensityTest, RejectsNonHermitian) {
  DensityMatrixd m{2, CMat::Identity(2, 2) / 2.0};
  m.rho(0, 1) = std::complex<double>(0.1, 0.0);
  try {
    from_density(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
}

TEST(MakeDensityTest, RejectsBadTraceAndNegativity) {
  EXPECT_THROW(make_density<double>(CMat::Identity(2, 2)), Error);
  CMat neg = CMat::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  try {
    make_density<double>(neg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAState);
  }
}

TEST(IsStateTest, SurfaceAndOutside) {
  EXPECT_TRUE(is_state(BlochVectord(2, Eigen::Vector3d(1, 0, 0))));
  EXPECT_FALSE(is_state(BlochVectord(2, Eigen::Vector3d(1.01, 0, 0))));
}

TEST(BlochCoreTest, LongDoubleInstantiation) {
  using Ld = long double;
  Vector<Ld> w(3);
  w << Ld(0.1), Ld(-0.2), Ld(0.3);
  const auto rho = to_density(BlochVector<Ld>(2, w));
  const auto back = from_density(rho);
  EXPECT_LT(static_cast<double>((back.w - w).norm()), 1e-18);
}

}  // namespace
}  // namespace qldp
