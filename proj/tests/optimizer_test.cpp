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

#include "qldp/optimizer.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

#include "qldp/bounds.hpp"
#include "qldp/ldp.hpp"

namespace qldp {
namespace {

TEST(MaximizeQfiTest, RadialFamilyBetweenDepolarizingAndCap) {
  const auto r = maximize_qfi(radial_family(), 0.6, 0.5, 32, 11);
  const double keep = std::tanh(0.25);
  EXPECT_GE(r.best_qfi, keep * keep);
  EXPECT_GE(r.best_qfi, r.depolarizing_qfi);
  ASSERT_TRUE(r.fisher_cap.has_value());
  EXPECT_EQ(r.cap_kind, "thm1");
  EXPECT_LE(r.best_qfi, *r.fisher_cap + 1e-8);
  EXPECT_GT(*r.cap_ratio, 0.0);
  EXPECT_LE(*r.cap_ratio, 1.0);
  EXPECT_LE(r.feasibility_margin, 1e-9);
  EXPECT_TRUE(certify(r.best_channel, 0.5).verdict);
  EXPECT_EQ(r.starts, 32);
  EXPECT_EQ(r.seed, 11u);
}

TEST(MaximizeQfiTest, RotationFamilyZeroOffset) {
  OptimizerOptions options;
  options.c_zero = true;
  const auto r = maximize_qfi(rotation_family(), 0.3, 0.25, 8, 12, options);
  EXPECT_EQ(r.cap_kind, "thm2");
  EXPECT_TRUE(r.best_channel.c.isZero(0));
  EXPECT_LE(r.best_qfi, fisher_cap_thm2(rotation_family(), 0.3, 0.25) + 1e-8);
  EXPECT_GE(r.best_qfi, r.depolarizing_qfi);
}

TEST(MaximizeQfiTest, RotationFamilyWithOffsetHasNoCap) {
  const auto r = maximize_qfi(rotation_family(), 0.3, 0.25, 2, 13);
  EXPECT_FALSE(r.fisher_cap.has_value());
  EXPECT_FALSE(r.cap_ratio.has_value());
  EXPECT_TRUE(r.cap_kind.empty());
  EXPECT_LE(r.feasibility_margin, 1e-9);
}

TEST(MaximizeQfiTest, DeterministicAcrossThreadCounts) {
  ::setenv("QLDP_THREADS", "1", 1);
  const auto a = maximize_qfi(radial_family(), 0.6, 0.3, 4, 5);
  const auto b = maximize_qfi(radial_family(), 0.6, 0.3, 4, 5);
  ::setenv("QLDP_THREADS", "3", 1);
  const auto c = maximize_qfi(radial_family(), 0.6, 0.3, 4, 5);
  ::unsetenv("QLDP_THREADS");
  EXPECT_EQ(a.best_qfi, b.best_qfi);
  EXPECT_EQ(a.best_channel.A, b.best_channel.A);
  EXPECT_EQ(a.best_qfi, c.best_qfi);
}

TEST(MaximizeQfiTest, Errors) {
  EXPECT_THROW(maximize_qfi(axis_family(3, 1), 0.1, 0.5, 1, 1), Error);
  EXPECT_THROW(maximize_qfi(radial_family(), 0.6, 0.0, 1, 1), Error);
  EXPECT_THROW(maximize_qfi(radial_family(), 0.6, 0.5, 0, 1), Error);
}

TEST(SweepTest, RowsAreFeasibleAndCapped) {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
  const auto rows = sweep(radial_family(), 0.6, grid, 4, 21);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].eps, grid[i]);
    EXPECT_EQ(rows[i].seed, 21u + i);
    EXPECT_LE(rows[i].feasibility_margin, 1e-9);
    EXPECT_LE(*rows[i].cap_ratio, 1.0);
  }
  // Theta(eps^2) Fisher scaling over eps <= 0.3.
  const double reference = rows[0].best_qfi / (grid[0] * grid[0]);
  for (int i = 1; i < 3; ++i) {
    EXPECT_NEAR(rows[i].best_qfi / (grid[i] * grid[i]) / reference, 1.0, 0.15);
  }
}

TEST(SweepTest, RejectsNonPositiveBudget) {
  EXPECT_THROW(sweep(radial_family(), 0.6, {0.1, 0.0}, 1, 1), Error);
}

}  // namespace
}  // namespace qldp
