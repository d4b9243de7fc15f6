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

// Monte Carlo check of the quantum Cramer-Rao bound.
//
// Each copy of the privatized state is measured in the eigenbasis of its
// symmetric logarithmic derivative L; the outcome's eigenvalue is its score.
// The estimator lambda0 + (1/(N F)) sum(scores) is locally unbiased at
// lambda0 and its variance is exactly 1/(N F). Global unbiasedness at
// finite N is not claimed.

#pragma once

#include <cstdint>
#include <vector>

#include "qldp/bounds.hpp"
#include "qldp/channels.hpp"
#include "qldp/families.hpp"

namespace qldp {

inline constexpr double kFullRankTol = 1e-10;

struct SldMeasurement {
  std::vector<ComplexMatrixd> projectors;
  std::vector<double> scores;
  std::vector<double> probabilities;  // Born probabilities at the state
  double fisher = 0.0;
  ComplexMatrixd sld;
};

struct TrialStats {
  std::int64_t n_trials = 0;
  std::int64_t n_copies = 0;
  double lambda0 = 0.0;
  double empirical_mean = 0.0;
  double empirical_mse = 0.0;
  double fisher = 0.0;
  double crb_value = 0.0;  // 1 / (N F)
  std::uint64_t seed = 0;
  bool mean_guard_ok = false;
  bool mse_guard_ok = false;
};

struct UpperBoundValidation {
  double alpha = 0.0;
  double eps = 0.0;
  std::int64_t n_copies = 0;
  double threshold = 0.0;  // alpha (1 + 5 sqrt(2 / trials))
  TrialStats stats;
  bool pass = false;
};

SldMeasurement sld_measurement(const DensityMatrixd& rho, const ComplexMatrixd& drho);

// Runs `trials` independent experiments of N copies each at lambda0. Trial t
// draws from stream t of `seed`, so results are reproducible bit-exactly and
// independent of QLDP_THREADS.
TrialStats simulate(const StateFamily& fam, double lambda0, const AffineChanneld& ch,
                    std::int64_t n_copies, std::int64_t trials, std::uint64_t seed);

// Runs simulate with N = N_upper and the depolarizing channel at eps, and
// checks empirical MSE <= alpha (1 + 5 sqrt(2 / trials)).
UpperBoundValidation validate_upper_bound(const StateFamily& fam, double lambda0,
                                          double alpha, double eps,
                                          std::int64_t trials, std::uint64_t seed);

}  // namespace qldp
