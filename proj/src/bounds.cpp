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

#include <cmath>
#include <limits>

namespace qldp {
namespace {

const double kE = std::exp(1.0);
const double kSqrtE = std::sqrt(kE);

void check_qubit_family(const StateFamily& fam, const char* what) {
  if (fam.d != 2) {
    throw Error(ErrorCode::kOutOfRegime,
                std::string(what) + " applies to qubit families only (d = 2)",
                fam.d);
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidInput, "target MSE alpha must be > 0", alpha);
  }
}

void check_eps(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidBudget, "privacy budget must be finite and >= 0",
                eps);
  }
  if (eps == 0.0) {
    throw Error(ErrorCode::kDiverged,
                "sample complexity is infinite at eps = 0 (only constant "
                "channels are 0-LDP)",
                eps);
  }
}

double speed_of(const StateFamily& fam, double lambda) {
  const double speed = fam.derivative(lambda).norm();
  if (!(speed > 0.0)) {
    throw Error(ErrorCode::kUndefined,
                "family derivative vanishes; the bounds are undefined", lambda);
  }
  return speed;
}

double thm2_constant() { return 1.0 / (kSqrtE * (2.0 - kSqrtE)); }

}  // namespace

double biased_factor(double b) {
  if (!(b >= 0.0) || !(b < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "bias bound must satisfy 0 <= b < 1", b);
  }
  return (1.0 - b) * (1.0 - b);
}

std::int64_t sample_count(double real_bound) {
  if (!std::isfinite(real_bound) || real_bound > 9.0e18) {
    throw Error(ErrorCode::kDiverged, "sample count overflows", real_bound);
  }
  return static_cast<std::int64_t>(std::ceil(real_bound));
}

Thm1Constants constants_thm1(const StateFamily& fam, double lambda) {
  check_qubit_family(fam, "Theorem 1");
  const Vectord w = fam.omega(lambda);
  const Vectord dw = fam.derivative(lambda);
  Thm1Constants out;
  out.speed2 = dw.squaredNorm();
  if (!(out.speed2 > 0.0)) {
    throw Error(ErrorCode::kUndefined,
                "family derivative vanishes; the bounds are undefined", lambda);
  }
  out.inner_product = dw.dot(w);
  out.C2 = 1.0 / out.speed2;
  const double q = std::abs(out.inner_product);
  if (q > kInnerProductTol) {
    out.C1 = (1.0 / out.speed2) / (4.0 + 0.25 * out.speed2 / (q * q));
  }
  return out;
}

double c1_bar(const StateFamily& fam, double lambda) {
  const double speed = speed_of(fam, lambda);
  return 1.0 / (speed * (speed + thm2_constant()));
}

BoundsReport bounds_thm1(const StateFamily& fam, double lambda, double alpha,
                         double eps, double bias) {
  check_alpha(alpha);
  check_eps(eps);
  const double factor = biased_factor(bias);
  const Thm1Constants k = constants_thm1(fam, lambda);
  const double em1 = std::expm1(eps);
  const double ep1 = std::exp(eps) + 1.0;

  BoundsReport r;
  r.family = fam.label;
  r.lambda = lambda;
  r.alpha = alpha;
  r.eps = eps;
  r.bias = bias;
  r.C1 = k.C1;
  r.C2 = k.C2;
  r.N_upper_real = k.C2 * ep1 * ep1 / (alpha * em1 * em1);
  r.N_upper = sample_count(r.N_upper_real);
  r.regime_flags.inner_product_zero = !k.C1.has_value();
  r.regime_flags.thm1_ok = k.C1.has_value();
  r.regime_flags.cor1_ok = eps < 1.0;
  r.regime_flags.thm2_ok = eps < 0.5;
  if (k.C1) {
    r.N_lower_real = factor * *k.C1 / (alpha * em1 * em1);
    r.N_lower = sample_count(*r.N_lower_real);
    r.fisher_cap = fisher_cap_thm1(fam, lambda, eps);
  } else {
    r.notes +=
        "<dw,w> = 0: the lower-bound constant C1 and the Fisher cap are "
        "undefined; use the c = 0 bounds. ";
  }
  if (r.regime_flags.thm2_ok) r.C1_bar = c1_bar(fam, lambda);
  if (eps > 1.0) {
    r.notes +=
        "large-eps regime: the lower bound decays like e^{-2 eps} while the "
        "upper bound tends to C2/alpha, so the bounds are no longer tight. ";
  }
  if (bias > 0.0) {
    r.notes += "lower bound scaled by (1-b)^2 for biased estimators. ";
  }
  return r;
}

BoundPair bounds_cor1(const StateFamily& fam, double lambda, double alpha,
                      double eps, double bias) {
  check_alpha(alpha);
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::kOutOfRegime, "Corollary 1 requires 0 < eps < 1", eps);
  }
  const double factor = biased_factor(bias);
  const Thm1Constants k = constants_thm1(fam, lambda);
  BoundPair out;
  out.upper_real = k.C2 * (kE + 1.0) * (kE + 1.0) / (alpha * eps * eps);
  out.upper = sample_count(out.upper_real);
  if (k.C1) {
    out.lower_real = factor * *k.C1 / (9.0 * alpha * eps * eps);
    out.lower = sample_count(*out.lower_real);
  }
  return out;
}

BoundPair bounds_thm2(const StateFamily& fam, double lambda, double alpha,
                      double eps, double bias) {
  check_alpha(alpha);
  check_qubit_family(fam, "Theorem 2");
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(ErrorCode::kOutOfRegime, "Theorem 2 requires 0 < eps < 1/2", eps);
  }
  const double factor = biased_factor(bias);
  const double speed = speed_of(fam, lambda);
  const double em1 = std::expm1(eps);
  BoundPair out;
  out.lower_real = factor * c1_bar(fam, lambda) / (alpha * em1 * em1);
  out.lower = sample_count(*out.lower_real);
  out.upper_real = (kSqrtE + 1.0) * (kSqrtE + 1.0) / (speed * speed * alpha * eps * eps);
  out.upper = sample_count(out.upper_real);
  return out;
}

double fisher_cap_thm1(const StateFamily& fam, double lambda, double eps) {
  const Thm1Constants k = constants_thm1(fam, lambda);
  if (!k.C1) {
    throw Error(ErrorCode::kUndefined,
                "Fisher cap is undefined when <dw, w> = 0", k.inner_product);
  }
  const double em1 = std::expm1(eps);
  const double q2 = k.inner_product * k.inner_product;
  return 4.0 * em1 * em1 * k.speed2 * (1.0 + k.speed2 / (16.0 * q2));
}

double fisher_cap_thm2(const StateFamily& fam, double lambda, double eps) {
  check_qubit_family(fam, "Theorem 2");
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(ErrorCode::kOutOfRegime, "Theorem 2 requires 0 < eps < 1/2", eps);
  }
  const double speed = speed_of(fam, lambda);
  const double em1 = std::expm1(eps);
  return em1 * em1 * speed * (speed + thm2_constant());
}

QuditBound qudit_upper_bound(const StateFamily& fam, double lambda, double alpha,
                             double eps, int d) {
  check_alpha(alpha);
  check_eps(eps);
  if (fam.d != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "family dimension does not match --dim", fam.d);
  }
  const double p = depolarizing_weight<double>(d, eps);
  const double keep = 1.0 - p;
  const Vectord w = fam.omega(lambda);
  const Vectord dw = fam.derivative(lambda);
  QuditBound out;
  out.d = d;
  out.mixing_weight = p;
  out.fisher_asymptotic = keep * keep * (0.5 * d) * dw.squaredNorm();
  const Vectord w_out = keep * w;
  const Vectord dw_out = keep * dw;
  out.fisher_exact = d == 2 ? qfi_qubit<double>(w_out, dw_out).value
                            : qfi_qudit<double>(d, w_out, dw_out).value;
  if (!(out.fisher_asymptotic > 0.0) || !(out.fisher_exact > 0.0)) {
    throw Error(ErrorCode::kUndefined,
                "family derivative vanishes; the bounds are undefined", lambda);
  }
  out.N_asymptotic_real = 1.0 / (alpha * out.fisher_asymptotic);
  out.N_exact_real = 1.0 / (alpha * out.fisher_exact);
  out.N_asymptotic = sample_count(out.N_asymptotic_real);
  out.N_exact = sample_count(out.N_exact_real);
  return out;
}

}  // namespace qldp
