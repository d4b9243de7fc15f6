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

// Search over eps-LDP qubit channels for the largest output QFI.
//
// The result is the best channel found, not a certified optimum. It gives
// numerical evidence against which the Fisher caps can be checked.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qldp/channels.hpp"
#include "qldp/families.hpp"
#include "qldp/sphere.hpp"

namespace qldp {

struct OptimizerOptions {
  bool c_zero = false;  // restrict to channels with c = 0
  double penalty = 1e6;
  double initial_step = 0.1;
  double step_shrink = 0.5;
  double min_step = 1e-7;
  int max_evaluations = 20000;
  // Feasibility inside the search; the final channel is re-certified with
  // the default sphere options.
  double feasibility_tol = 1e-12;
  SphereSearchOptions screening{0, 0, 1e-12, 100};
};

struct ChannelSearchResult {
  double eps = 0.0;
  AffineChanneld best_channel;
  double best_qfi = 0.0;
  double depolarizing_qfi = 0.0;
  std::optional<double> fisher_cap;
  std::optional<double> cap_ratio;
  std::string cap_kind;  // "thm1", "thm2" or empty
  int starts = 0;
  std::uint64_t seed = 0;
  bool c_zero = false;
  double feasibility_margin = 0.0;
  std::int64_t evaluations = 0;
};

ChannelSearchResult maximize_qfi(const StateFamily& fam, double lambda, double eps,
                                 int starts, std::uint64_t seed,
                                 const OptimizerOptions& options = {});

std::vector<ChannelSearchResult> sweep(const StateFamily& fam, double lambda,
                                       const std::vector<double>& eps_grid,
                                       int starts, std::uint64_t seed,
                                       const OptimizerOptions& options = {});

}  // namespace qldp
