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

#include "qldp/bounds.hpp"

#include <gtest/gtest.h>

#include <random>

namespace qldp {
namespace {

const double kE = std::exp(1.0);

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(ConstantsTest, RadialFamily) {
  const auto k6 = constants_thm1(radial_family(), 0.6);
  ASSERT_TRUE(k6.C1.has_value());
  EXPECT_NEAR(*k6.C1, 0.21301775147928992, 1e-16);
  EXPECT_EQ(k6.C2, 1.0);
  EXPECT_EQ(k6.speed2, 1.0);
  EXPECT_NEAR(k6.inner_product, 0.6, 0.0);
  const auto k9 = constants_thm1(radial_family(), 0.9);
  EXPECT_NEAR(*k9.C1, 0.23209169054441262, 1e-16);
}

TEST(ConstantsTest, RotationFamilyHasNoC1) {
  const auto k = constants_thm1(rotation_family(), 0.3);
  EXPECT_FALSE(k.C1.has_value());
  EXPECT_NEAR(k.C2, 1.0, 1e-15);
  EXPECT_EQ(CodeOf([] { fisher_cap_thm1(rotation_family(), 0.3, 0.5); }),
            ErrorCode::kUndefined);
}

TEST(ConstantsTest, QuditFamilyOutOfRegime) {
  EXPECT_EQ(CodeOf([] { constants_thm1(axis_family(3, 1), 0.1); }), ErrorCode::kOutOfRegime);
}

TEST(GeneralBoundsTest, RadialExample) {
  const auto r = bounds_thm1(radial_family(), 0.6, 0.01, 1.0);
  const double upper = (kE + 1) * (kE + 1) / (0.01 * (kE - 1) * (kE - 1));
  EXPECT_NEAR(r.N_upper_real, upper, 1e-12 * upper);
  EXPECT_NEAR(r.N_upper_real, 468.26943768311696, 1e-10);
  EXPECT_EQ(r.N_upper, 469);
  ASSERT_TRUE(r.N_lower_real.has_value());
  EXPECT_NEAR(*r.N_lower_real, 7.214844937387439, 1e-12);
  EXPECT_EQ(*r.N_lower, 8);
  EXPECT_NEAR(*r.fisher_cap, 13.86031174167007, 1e-12);
  EXPECT_TRUE(r.regime_flags.thm1_ok);
  EXPECT_FALSE(r.regime_flags.cor1_ok);
  EXPECT_FALSE(r.regime_flags.thm2_ok);
  EXPECT_FALSE(r.C1_bar.has_value());
  EXPECT_EQ(r.family, "radial");
}

TEST(GeneralBoundsTest, LargeBudgetLoosens) {
  const auto r = bounds_thm1(radial_family(), 0.6, 0.01, 30.0);
  EXPECT_LT(*r.N_lower_real, 1e-20);
  EXPECT_NEAR(r.N_upper_real, 1.0 / 0.01, 1e-9);
  EXPECT_NE(r.notes.find("large-eps"), std::string::npos);
}

TEST(GeneralBoundsTest, AlphaHomogeneity) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.01, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double alpha = unit(rng) * 0.1;
    const double eps = unit(rng);
    const auto a = bounds_thm1(radial_family(), 0.6, alpha, eps);
    const auto b = bounds_thm1(radial_family(), 0.6, 2 * alpha, eps);
    EXPECT_EQ(b.N_upper_real, a.N_upper_real / 2);
    EXPECT_EQ(*b.N_lower_real, *a.N_lower_real / 2);
  }
}

TEST(GeneralBoundsTest, SandwichHolds) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> eps_dist(1e-3, 5.0), lambda_dist(-0.99, 0.99);
  for (int i = 0; i < 1000; ++i) {
    const double lambda = lambda_dist(rng);
    if (std::abs(lambda) < 1e-3) continue;
    const auto r = bounds_thm1(radial_family(), lambda, 0.05, eps_dist(rng));
    EXPECT_LE(*r.N_lower_real, r.N_upper_real);
    EXPECT_LE(*r.N_lower, r.N_upper);
  }
}

TEST(GeneralBoundsTest, UpperBoundIsTheDepolarizingCount) {
  // 1/(alpha F_dep) <= N_upper, with equality when <dw, w> = 0.
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> eps_dist(0.01, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double eps = eps_dist(rng);
    for (const auto& fam : {radial_family(), scaled_rotation_family(0.7)}) {
      const double f = output_qfi(fam, 0.6, depolarizing(2, eps)).value;
      const auto r = bounds_thm1(fam, 0.6, 0.01, eps);
      EXPECT_LE(1.0 / (0.01 * f), r.N_upper_real * (1 + 1e-9));
      if (fam.label == "scaled-rotation") {
        EXPECT_NEAR(1.0 / (0.01 * f), r.N_upper_real, 1e-9 * r.N_upper_real);
      }
    }
  }
}

TEST(GeneralBoundsTest, Errors) {
  EXPECT_EQ(CodeOf([] { bounds_thm1(radial_family(), 0.6, 0.01, 0.0); }),
            ErrorCode::kDiverged);
  EXPECT_EQ(CodeOf([] { bounds_thm1(radial_family(), 0.6, 0.01, -1.0); }),
            ErrorCode::kInvalidBudget);
  EXPECT_EQ(CodeOf([] { bounds_thm1(radial_family(), 0.6, 0.0, 1.0); }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] { bounds_thm1(radial_family(), 0.6, 0.01, 1.0, 1.0); }),
            ErrorCode::kInvalidInput);
}

TEST(GeneralBoundsTest, RotationFamilyReportsOnlyUpper) {
  const auto r = bounds_thm1(rotation_family(), 0.2, 0.01, 0.3);
  EXPECT_FALSE(r.N_lower_real.has_value());
  EXPECT_FALSE(r.fisher_cap.has_value());
  EXPECT_TRUE(r.regime_flags.inner_product_zero);
  EXPECT_TRUE(r.C1_bar.has_value());
}

TEST(BiasTest, Factor) {
  EXPECT_EQ(biased_factor(0.0), 1.0);
  EXPECT_EQ(biased_factor(0.5), 0.25);
  EXPECT_THROW(biased_factor(1.0), Error);
  EXPECT_THROW(biased_factor(-0.1), Error);
}

TEST(BiasTest, QuarterOfUnbiasedLowerBound) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int i = 0; i < 100; ++i) {
    const double lambda = unit(rng), alpha = unit(rng) * 0.1, eps = unit(rng) * 3;
    const auto biased = bounds_thm1(radial_family(), lambda, alpha, eps, 0.5);
    const auto plain = bounds_thm1(radial_family(), lambda, alpha, eps);
    EXPECT_EQ(*biased.N_lower_real, 0.25 * *plain.N_lower_real);
    EXPECT_EQ(biased.N_upper_real, plain.N_upper_real);
  }
}

TEST(SmallBudgetTest, Example) {
  const auto p = bounds_cor1(radial_family(), 0.6, 0.1, 0.5);
  const double c1 = 0.21301775147928992;
  EXPECT_NEAR(*p.lower_real, c1 / (9 * 0.1 * 0.25), 1e-14);
  EXPECT_NEAR(*p.lower_real, 0.9467455621301774, 1e-14);
  EXPECT_NEAR(p.upper_real, (kE + 1) * (kE + 1) / (0.1 * 0.25), 1e-10);
  EXPECT_NEAR(p.upper_real, 553.0247902339496, 1e-10);
}

TEST(SmallBudgetTest, EnvelopesGeneralBounds) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> eps_dist(1e-6, 1.0), alpha_dist(1e-4, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double eps = eps_dist(rng), alpha = alpha_dist(rng);
    if (eps >= 1.0) continue;
    const auto c = bounds_cor1(radial_family(), 0.6, alpha, eps);
    const auto t = bounds_thm1(radial_family(), 0.6, alpha, eps);
    EXPECT_LE(*c.lower_real, *t.N_lower_real * (1 + 1e-12));
    EXPECT_GE(c.upper_real, t.N_upper_real * (1 - 1e-12));
  }
}

TEST(SmallBudgetTest, NearOneStaysFinite) {
  const auto p = bounds_cor1(radial_family(), 0.6, 0.1, std::nextafter(1.0, 0.0));
  EXPECT_TRUE(std::isfinite(p.upper_real));
  EXPECT_TRUE(std::isfinite(*p.lower_real));
}

TEST(SmallBudgetTest, OutOfRegime) {
  for (double eps : {0.0, 1.0, 1.5}) {
    try {
      bounds_cor1(radial_family(), 0.6, 0.1, eps);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kOutOfRegime);
      EXPECT_TRUE(e.IsRegimeError());
      EXPECT_NE(std::string(e.what()).find("Corollary 1"), std::string::npos);
    }
  }
}

TEST(ZeroOffsetBoundsTest, RotationConstants) {
  const double expected = 1.0 / (1.0 + 1.0 / (std::sqrt(kE) * (2 - std::sqrt(kE))));
  EXPECT_NEAR(c1_bar(rotation_family(), 0.4), expected, 1e-15);
  EXPECT_NEAR(c1_bar(rotation_family(), 0.4), 0.3667522299630386, 1e-15);
  EXPECT_LT(c1_bar(rotation_family(), 0.4), constants_thm1(rotation_family(), 0.4).C2);
  const auto p = bounds_thm2(rotation_family(), 0.4, 0.05, 0.25);
  EXPECT_GT(*p.lower_real, 0.0);
  EXPECT_TRUE(std::isfinite(p.upper_real));
  EXPECT_LE(*p.lower_real, p.upper_real);
  EXPECT_NEAR(p.upper_real,
              (std::sqrt(kE) + 1) * (std::sqrt(kE) + 1) / (0.05 * 0.0625), 1e-9);
}

TEST(ZeroOffsetBoundsTest, OutOfRegime) {
  EXPECT_EQ(CodeOf([] { bounds_thm2(rotation_family(), 0.4, 0.05, 0.5); }),
            ErrorCode::kOutOfRegime);
  EXPECT_EQ(CodeOf([] { fisher_cap_thm2(rotation_family(), 0.4, 0.7); }),
            ErrorCode::kOutOfRegime);
}

TEST(FisherCapTest, Thm1Values) {
  const double em1 = kE - 1;
  EXPECT_NEAR(fisher_cap_thm1(radial_family(), 0.6, 1.0),
              4 * em1 * em1 * (1 + (1.0 / 16) * (1 / 0.36)), 1e-12);
  for (double eps : {0.05, 0.4, 1.1}) {
    const double ratio = fisher_cap_thm1(radial_family(), 0.6, 2 * eps) /
                         fisher_cap_thm1(radial_family(), 0.6, eps);
    const double expected = std::pow(std::expm1(2 * eps) / std::expm1(eps), 2);
    EXPECT_NEAR(ratio, expected, 1e-12 * expected);
  }
}

TEST(FisherCapTest, DepolarizingStaysUnderCaps) {
  for (int i = 0; i < 20; ++i) {
    const double eps = 0.1 + i * 0.1;
    const double f = output_qfi(radial_family(), 0.6, depolarizing(2, eps)).value;
    EXPECT_LE(f, fisher_cap_thm1(radial_family(), 0.6, eps));
  }
  for (double eps = 0.02; eps < 0.5; eps += 0.04) {
    const double f = output_qfi(rotation_family(), 0.3, depolarizing(2, eps)).value;
    EXPECT_LE(f, fisher_cap_thm2(rotation_family(), 0.3, eps));
  }
}

TEST(FisherCapTest, Thm2Values) {
  const double em1 = std::expm1(0.25);
  EXPECT_NEAR(fisher_cap_thm2(rotation_family(), 0.0, 0.25),
              em1 * em1 * (1 + 1 / (std::sqrt(kE) * (2 - std::sqrt(kE)))), 1e-15);
  EXPECT_NEAR(fisher_cap_thm2(rotation_family(), 0.0, 0.25), 0.2199589552128289, 1e-15);
  EXPECT_LT(fisher_cap_thm2(rotation_family(), 0.0, 1e-6), 1e-11);
}

TEST(QuditBoundTest, QubitLimitMatchesThm1Upper) {
  const auto fam = scaled_rotation_family(0.5);
  for (double eps : {0.5, 0.1, 0.01, 0.001}) {
    const auto q = qudit_upper_bound(fam, 0.3, 0.01, eps, 2);
    const double upper = bounds_thm1(fam, 0.3, 0.01, eps).N_upper_real;
    EXPECT_NEAR(q.N_asymptotic_real / upper, 1.0, 1e-9);
  }
  const auto q = qudit_upper_bound(radial_family(), 0.6, 0.01, 0.001, 2);
  EXPECT_NEAR(q.N_exact_real / q.N_asymptotic_real, 1.0, 1e-6);
}

TEST(QuditBoundTest, QutritAxisFamily) {
  const auto fam = axis_family(3, 1);
  const double eps = 0.05;
  const auto q = qudit_upper_bound(fam, 0.1, 0.01, eps, 3);
  const double keep = std::expm1(eps) / (2 + std::exp(eps));
  EXPECT_NEAR(1 - q.mixing_weight, keep, 1e-15);
  EXPECT_NEAR(q.fisher_asymptotic, keep * keep * 1.5, 1e-15);
  EXPECT_NEAR(q.fisher_exact,
              qfi_qudit<double>(3, keep * fam.omega(0.1), keep * fam.derivative(0.1)).value,
              1e-15);
  EXPECT_GT(q.N_exact, 0);
}

TEST(QuditBoundTest, AsymptoticIsLinearInDimension) {
  const double eps = 0.2;
  auto asymptotic_times_keep2 = [&](int d) {
    const auto q = qudit_upper_bound(axis_family(d, 1), 0.0, 0.01, eps, d);
    const double keep = 1 - q.mixing_weight;
    return q.fisher_asymptotic / (keep * keep);
  };
  EXPECT_NEAR(asymptotic_times_keep2(4) / asymptotic_times_keep2(2), 2.0, 1e-14);
  EXPECT_NEAR(asymptotic_times_keep2(6) / asymptotic_times_keep2(3), 2.0, 1e-14);
  EXPECT_THROW(qudit_upper_bound(axis_family(3, 1), 0.0, 0.01, eps, 4), Error);
}

TEST(SampleCountTest, CeilAndOverflow) {
  EXPECT_EQ(sample_count(7.0), 7);
  EXPECT_EQ(sample_count(7.000001), 8);
  EXPECT_EQ(CodeOf([] { sample_count(1e19); }), ErrorCode::kDiverged);
}

}  // namespace
}  // namespace qldp
