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

#include <algorithm>
#include <cmath>
#include <vector>

#include "qldp/divergence.hpp"
#include "qldp/random.hpp"

namespace qldp {
namespace {

void check_qubit(const AffineChanneld& ch) {
  if (ch.d != 2) {
    throw Error(ErrorCode::kUnsupported,
                "exact LDP certification is only available for qubit channels",
                ch.d);
  }
}

void check_budget(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidBudget, "privacy budget must be finite and >= 0",
                eps);
  }
}

// sup - (gamma - 1) regrouped as (1 + s + t) + gamma (s - t - 1), with
// s = |A^T u| and t = c.u, so that large budgets do not cancel.
double stable_margin(const AffineChanneld& ch, double eps, const Vectord& u) {
  const double s = (ch.A.transpose() * u).norm();
  const double t = ch.c.dot(u);
  return (1.0 + s + t) + std::exp(eps) * (s - t - 1.0);
}

// argmax of |M z + k| over |z| <= 1. With M^T M = V diag(l) V^T and
// b = V^T M^T k, the maximizer is z = V diag(1 / (mu - l)) b for the mu >=
// max(l) at which |z| = 1; if the top eigenspace carries no b the remaining
// length goes along it.
Vectord ball_argmax(const Matrixd& m, const Vectord& k) {
  Eigen::SelfAdjointEigenSolver<Matrixd> solver(m.transpose() * m);
  const Vectord lambda = solver.eigenvalues();
  const Matrixd& v = solver.eigenvectors();
  const Vectord b = v.transpose() * (m.transpose() * k);
  const Eigen::Index n = lambda.size();
  const double top = lambda(n - 1);
  const double scale = std::max(top, 1.0);
  const double bnorm = b.norm();
  auto length2 = [&](double mu) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double gap = mu - lambda(i);
      if (b(i) != 0.0) sum += b(i) * b(i) / (gap * gap);
    }
    return sum;
  };
  Vectord y = Vectord::Zero(n);
  bool top_has_weight = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (top - lambda(i) <= 1e-13 * scale && std::abs(b(i)) > 1e-14 * (bnorm + scale)) {
      top_has_weight = true;
    }
  }
  if (bnorm == 0.0) {
    y(n - 1) = 1.0;
  } else if (top_has_weight || length2(top + 1e-13 * scale) >= 1.0) {
    // |z(mu)| decreases on (top, inf) and is at most 1 at top + |b|.
    double lo = top;
    double hi = top + bnorm;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (length2(mid) > 1.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) y(i) = b(i) / (hi - lambda(i));
  } else {
    double used = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (top - lambda(i) > 1e-13 * scale) {
        y(i) = b(i) / (top - lambda(i));
        used += y(i) * y(i);
      }
    }
    y(n - 1) = std::sqrt(std::max(0.0, 1.0 - used));
  }
  return v * y;
}

}  // namespace

double ldp_lhs(const AffineChanneld& ch, double eps, const Eigen::Vector3d& w,
               const Eigen::Vector3d& v) {
  check_qubit(ch);
  const double gamma = std::exp(eps);
  return (ch.A * w - gamma * (ch.A * v) + (1.0 - gamma) * ch.c).norm();
}

LdpSup ldp_sup(const AffineChanneld& ch, double eps,
               const SphereSearchOptions& options,
               std::span<const Vectord> warm_starts) {
  check_qubit(ch);
  check_budget(eps);
  const double gamma = std::exp(eps);
  LdpSup out;
  if (ch.c.isZero(0)) {
    Eigen::JacobiSVD<Matrixd> svd(ch.A, Eigen::ComputeFullU);
    out.value = (1.0 + gamma) * svd.singularValues()(0);
    out.direction = svd.matrixU().col(0);
    return out;
  }
  // The sup equals max over the unit ball of |M z + k| with M = (1+gamma) A
  // and k = (1-gamma) c, solved exactly via the secular equation. The sphere
  // ascent below, warm-started from that solution, is a safeguard.
  const Vectord k = (1.0 - gamma) * ch.c;
  const Vectord exact = ball_argmax(Matrixd((1.0 + gamma) * ch.A), k);
  std::vector<Vectord> warm(warm_starts.begin(), warm_starts.end());
  const Vectord lifted = (1.0 + gamma) * (ch.A * exact) + k;
  if (lifted.norm() > 0.0) warm.insert(warm.begin(), lifted.normalized());
  const Matrixd at = ch.A.transpose();
  const Matrixd aat = ch.A * at;
  auto objective = [&](const Vectord& u) {
    return (1.0 + gamma) * (at * u).norm() + (1.0 - gamma) * ch.c.dot(u);
  };
  auto ascent = [&](const Vectord& u) -> Vectord {
    const double n = (at * u).norm();
    Vectord g = (1.0 - gamma) * ch.c;
    if (n > 0.0) g += ((1.0 + gamma) / n) * (aat * u);
    return g;
  };
  const auto best = maximize_on_sphere<double>(3, objective, ascent, options,
                                               std::span<const Vectord>(warm));
  out.value = best.value;
  out.direction = best.argmax;
  return out;
}

double ldp_margin(const AffineChanneld& ch, double eps,
                  const SphereSearchOptions& options) {
  return stable_margin(ch, eps, ldp_sup(ch, eps, options).direction);
}

LdpCertificate certify(const AffineChanneld& ch, double eps,
                       const SphereSearchOptions& options, double tolerance) {
  const LdpSup sup = ldp_sup(ch, eps, options);
  LdpCertificate cert;
  cert.eps = eps;
  cert.sup_value = sup.value;
  cert.margin = stable_margin(ch, eps, sup.direction);
  cert.verdict = cert.margin <= tolerance;
  cert.witness_u = sup.direction;
  // Each ball is maximized independently along u: w = A^T u / |A^T u| and
  // v = -w. When A^T u vanishes every unit vector attains the same value.
  const Eigen::Vector3d atu = ch.A.transpose() * sup.direction;
  const double n = atu.norm();
  cert.witness_omega = n > 0.0 ? Eigen::Vector3d(atu / n) : Eigen::Vector3d::UnitX();
  cert.witness_nu = -cert.witness_omega;
  return cert;
}

double tight_epsilon(const AffineChanneld& ch, const SphereSearchOptions& options) {
  check_qubit(ch);
  auto feasible = [&](double eps) { return ldp_margin(ch, eps, options) <= 0.0; };
  if (feasible(0.0)) return 0.0;
  if (!feasible(kMaxBudget)) {
    throw Error(ErrorCode::kDiverged,
                "channel is not eps-LDP for any eps <= 50", kMaxBudget);
  }
  double lo = 0.0;
  double hi = kMaxBudget;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

namespace {

Vectord project_to_ball(Vectord w, double radius) {
  const double n = w.norm();
  if (n > radius) w *= radius / n;
  return w;
}

}  // namespace

AuditResult audit_by_sampling(const AffineChanneld& ch, double eps,
                              std::int64_t n, std::uint64_t seed,
                              const AuditOptions& options) {
  check_budget(eps);
  if (n < 1) {
    throw Error(ErrorCode::kInvalidInput, "audit needs at least one sample",
                static_cast<double>(n));
  }
  const int d = ch.d;
  const int dim = bloch_size(d);
  const double gamma = std::exp(eps);
  const double radius = bloch_radius(d);
  Engine engine = make_stream(seed, 0);

  AuditResult result;
  result.max_divergence = -1.0;
  std::int64_t focus_draws = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    Vectord w, v;
    if (options.focus && i % 2 == 1) {
      const auto& [fw, fv] = *options.focus;
      if (focus_draws == 0) {
        w = fw;
        v = fv;
      } else {
        const double spread = options.focus_spread * uniform01(engine);
        w = fw + spread * uniform_in_ball(engine, dim);
        v = fv + spread * uniform_in_ball(engine, dim);
        if (d == 2) {
          w = project_to_ball(std::move(w), radius);
          v = project_to_ball(std::move(v), radius);
        } else if (!is_state(BlochVectord(d, w)) || !is_state(BlochVectord(d, v))) {
          w = fw;
          v = fv;
        }
      }
      ++focus_draws;
    } else {
      w = random_state(engine, d).w;
      v = random_state(engine, d).w;
    }
    const auto rho = density_from_coords<double>(d, ch.A * w + ch.c);
    const auto sigma = density_from_coords<double>(d, ch.A * v + ch.c);
    const double value = hockey_stick(rho, sigma, gamma);
    if (value > result.max_divergence) {
      result.max_divergence = value;
      result.worst_omega = w;
      result.worst_nu = v;
    }
  }
  result.samples = n;
  result.consistent = result.max_divergence <= options.tolerance;
  return result;
}

}  // namespace qldp
