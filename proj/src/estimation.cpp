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

#include "qldp/estimation.hpp"

#include <algorithm>
#include <cmath>

#include "qldp/qfi.hpp"
#include "qldp/random.hpp"

namespace qldp {

SldMeasurement sld_measurement(const DensityMatrixd& rho, const ComplexMatrixd& drho) {
  const int d = rho.d;
  if (drho.rows() != d || drho.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "derivative must be d x d");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrixd> state(rho.rho);
  const auto& p = state.eigenvalues();
  const ComplexMatrixd& basis = state.eigenvectors();
  const ComplexMatrixd rotated = basis.adjoint() * drho * basis;

  ComplexMatrixd sld_eigen = ComplexMatrixd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const bool outside = std::min(p(j), p(k)) <= kFullRankTol;
      if (outside && std::abs(rotated(j, k)) > kFullRankTol) {
        throw Error(ErrorCode::kRankDeficient,
                    "state is rank-deficient and the derivative leaves its "
                    "support; choose a full-rank operating point (finite eps)",
                    std::min(p(j), p(k)));
      }
      const double denom = p(j) + p(k);
      if (denom > kSupportTol) sld_eigen(j, k) = 2.0 * rotated(j, k) / denom;
    }
  }
  SldMeasurement out;
  out.sld = basis * sld_eigen * basis.adjoint();
  out.sld = 0.5 * (out.sld + out.sld.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<ComplexMatrixd> sld(out.sld);
  double fisher = 0.0;
  for (int l = 0; l < d; ++l) {
    const Eigen::VectorXcd v = sld.eigenvectors().col(l);
    out.projectors.push_back(v * v.adjoint());
    out.scores.push_back(sld.eigenvalues()(l));
    const double prob = std::max(0.0, (v.adjoint() * rho.rho * v)(0, 0).real());
    out.probabilities.push_back(prob);
    fisher += prob * out.scores.back() * out.scores.back();
  }
  out.fisher = fisher;
  return out;
}

TrialStats simulate(const StateFamily& fam, double lambda0, const AffineChanneld& ch,
                    std::int64_t n_copies, std::int64_t trials, std::uint64_t seed) {
  if (n_copies < 1 || trials < 1) {
    throw Error(ErrorCode::kInvalidInput, "need N >= 1 copies and >= 1 trial");
  }
  const StateFamily out_family = privatize(fam, ch);
  const Vectord w = out_family.omega(lambda0);
  const Vectord dw = out_family.derivative(lambda0);
  const DensityMatrixd rho = to_density(BlochVectord(fam.d, w));
  const SldMeasurement m = sld_measurement(rho, density_derivative(fam.d, dw));

  const double nf = static_cast<double>(n_copies) * m.fisher;
  if (!(m.fisher > 0.0) || !(nf > 1e-300) || !std::isfinite(nf)) {
    throw Error(ErrorCode::kInvalidInput,
                "N F underflows; the privatized state carries no information",
                nf);
  }
  std::vector<double> cdf(m.probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += m.probabilities[i];
    cdf[i] = acc;
  }
  for (double& c : cdf) c /= acc;
  cdf.back() = 1.0;

  std::vector<double> errors(static_cast<std::size_t>(trials));
  parallel_for(errors.size(), [&](std::size_t t) {
    Engine engine = make_stream(seed, t);
    double score_sum = 0.0;
    for (std::int64_t i = 0; i < n_copies; ++i) {
      const double u = uniform01(engine);
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t outcome =
          std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
      score_sum += m.scores[outcome];
    }
    errors[t] = score_sum / nf;
  });
  std::vector<double> squares(errors.size());
  std::transform(errors.begin(), errors.end(), squares.begin(),
                 [](double e) { return e * e; });

  TrialStats stats;
  stats.n_trials = trials;
  stats.n_copies = n_copies;
  stats.lambda0 = lambda0;
  stats.seed = seed;
  stats.fisher = m.fisher;
  stats.crb_value = 1.0 / nf;
  const double n = static_cast<double>(trials);
  stats.empirical_mean = lambda0 + pairwise_sum(errors) / n;
  stats.empirical_mse = pairwise_sum(squares) / n;
  stats.mean_guard_ok =
      std::abs(stats.empirical_mean - lambda0) <= 4.0 * std::sqrt(stats.crb_value / n);
  stats.mse_guard_ok = std::abs(stats.empirical_mse - stats.crb_value) <=
                       5.0 * stats.crb_value * std::sqrt(2.0 / n);
  return stats;
}

UpperBoundValidation validate_upper_bound(const StateFamily& fam, double lambda0,
                                          double alpha, double eps,
                                          std::int64_t trials, std::uint64_t seed) {
  const BoundsReport bounds = bounds_thm1(fam, lambda0, alpha, eps);
  UpperBoundValidation out;
  out.alpha = alpha;
  out.eps = eps;
  out.n_copies = bounds.N_upper;
  out.stats = simulate(fam, lambda0, depolarizing<double>(fam.d, eps), out.n_copies,
                       trials, seed);
  out.threshold = alpha * (1.0 + 5.0 * std::sqrt(2.0 / static_cast<double>(trials)));
  out.pass = out.stats.empirical_mse <= out.threshold;
  return out;
}

}  // namespace qldp
