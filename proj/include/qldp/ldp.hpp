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

// Epsilon-LDP certification of qubit affine channels.
//
// A qubit channel (A, c) is eps-LDP iff, with gamma = e^eps,
//
//   S = sup_{|w|,|v| <= 1} |A w - gamma A v + (1 - gamma) c| <= gamma - 1.
//
// For a fixed unit direction u the inner problem is linear in w and v, so
//
//   S = max_{|u| = 1} (1 + gamma) |A^T u| + (1 - gamma) c^T u,
//
// a convex function maximized over S^2. With c = 0 this is
// (1 + gamma) sigma_max(A).

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "qldp/channels.hpp"
#include "qldp/sphere.hpp"

namespace qldp {

inline constexpr double kCertifyTol = 1e-9;
inline constexpr double kTightEpsTol = 1e-8;
inline constexpr double kMaxBudget = 50.0;
inline constexpr double kAuditTol = 1e-9;

struct LdpSup {
  double value = 0.0;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
};

struct LdpCertificate {
  double eps = 0.0;
  double sup_value = 0.0;
  double margin = 0.0;
  bool verdict = false;
  Eigen::Vector3d witness_u = Eigen::Vector3d::UnitX();
  Eigen::Vector3d witness_omega = Eigen::Vector3d::Zero();
  Eigen::Vector3d witness_nu = Eigen::Vector3d::Zero();
};

// |A w - gamma A v + (1 - gamma) c|, the left-hand side of the qubit LDP
// condition.
double ldp_lhs(const AffineChanneld& ch, double eps, const Eigen::Vector3d& w,
               const Eigen::Vector3d& v);

LdpSup ldp_sup(const AffineChanneld& ch, double eps,
               const SphereSearchOptions& options = {},
               std::span<const Vectord> warm_starts = {});

// sup - (e^eps - 1).
double ldp_margin(const AffineChanneld& ch, double eps,
                  const SphereSearchOptions& options = {});

LdpCertificate certify(const AffineChanneld& ch, double eps,
                       const SphereSearchOptions& options = {},
                       double tolerance = kCertifyTol);

// Smallest eps in [0, 50] with margin <= 0, by bisection.
double tight_epsilon(const AffineChanneld& ch,
                     const SphereSearchOptions& options = {});

struct AuditOptions {
  // When set, half of the samples are drawn near this (w, v) pair, the pair
  // itself first.
  std::optional<std::pair<Vectord, Vectord>> focus;
  double focus_spread = 0.05;
  double tolerance = kAuditTol;
};

struct AuditResult {
  bool consistent = true;
  double max_divergence = 0.0;
  Vectord worst_omega;
  Vectord worst_nu;
  std::int64_t samples = 0;
};

// Draws n input pairs from the state set and records the largest
// E_{e^eps}(E(rho) || E(sigma)). It can refute LDP but never prove it.
AuditResult audit_by_sampling(const AffineChanneld& ch, double eps,
                              std::int64_t n, std::uint64_t seed,
                              const AuditOptions& options = {});

}  // namespace qldp
