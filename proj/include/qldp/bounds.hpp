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

// Sample-complexity bounds for estimating a scalar parameter from copies of
// a state privatized by an eps-LDP channel.
//
// With s = |dw|^2 and q = |<dw, w>|, qubit families obey
//
//   C1 / (alpha (e^eps - 1)^2) <= N <= C2 (e^eps + 1)^2 / (alpha (e^eps - 1)^2)
//
// where C1 = (1/s) (4 + s / (4 q^2))^{-1} and C2 = 1/s. The lower bound is
// the inverse of a Fisher-information cap over all eps-LDP channels; the
// upper bound is the Cramer-Rao count of the depolarizing channel.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qldp/families.hpp"

namespace qldp {

inline constexpr double kInnerProductTol = 1e-10;

struct RegimeFlags {
  bool thm1_ok = false;
  bool cor1_ok = false;
  bool thm2_ok = false;
  bool inner_product_zero = false;
};

struct Thm1Constants {
  std::optional<double> C1;  // undefined when <dw, w> vanishes
  double C2 = 0.0;
  double speed2 = 0.0;         // |dw|^2
  double inner_product = 0.0;  // <dw, w>
};

struct BoundsReport {
  std::string family;
  double lambda = 0.0;
  double alpha = 0.0;
  double eps = 0.0;
  double bias = 0.0;
  std::optional<double> C1;
  double C2 = 0.0;
  std::optional<double> C1_bar;
  std::optional<double> N_lower_real;
  double N_upper_real = 0.0;
  std::optional<std::int64_t> N_lower;
  std::int64_t N_upper = 0;
  std::optional<double> fisher_cap;
  RegimeFlags regime_flags;
  std::string notes;
};

struct BoundPair {
  std::optional<double> lower_real;
  double upper_real = 0.0;
  std::optional<std::int64_t> lower;
  std::int64_t upper = 0;
};

struct QuditBound {
  int d = 2;
  double mixing_weight = 0.0;   // p
  double fisher_asymptotic = 0.0;
  double fisher_exact = 0.0;
  double N_asymptotic_real = 0.0;
  double N_exact_real = 0.0;
  std::int64_t N_asymptotic = 0;
  std::int64_t N_exact = 0;
};

// (1 - b)^2 for a bias-derivative bound 0 <= b < 1.
double biased_factor(double b);

// Integer sample count: the ceiling of a positive real bound.
std::int64_t sample_count(double real_bound);

Thm1Constants constants_thm1(const StateFamily& fam, double lambda);

// 1 / (|dw| (|dw| + 1/(sqrt(e)(2 - sqrt(e))))).
double c1_bar(const StateFamily& fam, double lambda);

BoundsReport bounds_thm1(const StateFamily& fam, double lambda, double alpha,
                         double eps, double bias = 0.0);

// Valid for 0 < eps < 1: C1/(9 alpha eps^2) and C2 (e+1)^2/(alpha eps^2).
BoundPair bounds_cor1(const StateFamily& fam, double lambda, double alpha,
                      double eps, double bias = 0.0);

// c = 0 channels, 0 < eps < 1/2: C1_bar/(alpha (e^eps-1)^2) and
// C2 (sqrt(e)+1)^2/(alpha eps^2). No inner-product assumption.
BoundPair bounds_thm2(const StateFamily& fam, double lambda, double alpha,
                      double eps, double bias = 0.0);

// 4 (e^eps-1)^2 |dw|^2 (1 + |dw|^2 / (16 <dw,w>^2)).
double fisher_cap_thm1(const StateFamily& fam, double lambda, double eps);

// (e^eps-1)^2 |dw| (|dw| + 1/(sqrt(e)(2 - sqrt(e)))), c = 0 and eps < 1/2.
double fisher_cap_thm2(const StateFamily& fam, double lambda, double eps);

// Depolarizing-channel counts for a qudit family: the small-eps estimate
// F ~ (1-p)^2 (d/2) |dw|^2 and the exact QFI of (1-p) w.
QuditBound qudit_upper_bound(const StateFamily& fam, double lambda,
                             double alpha, double eps, int d);

}  // namespace qldp
