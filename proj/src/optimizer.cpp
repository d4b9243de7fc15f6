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

#include <cmath>
#include <limits>

#include "qldp/bounds.hpp"
#include "qldp/ldp.hpp"
#include "qldp/random.hpp"

namespace qldp {
namespace {

struct Evaluation {
  double objective = -std::numeric_limits<double>::infinity();
  double qfi = -std::numeric_limits<double>::infinity();
  double margin = std::numeric_limits<double>::infinity();
};

// Search state for one start. Parameters are A (column-major) followed by c
// unless the search is restricted to c = 0.
class StartSearch {
 public:
  StartSearch(const Vectord& w, const Vectord& dw, double eps,
              const OptimizerOptions& options)
      : w_(w), dw_(dw), eps_(eps), gamma_m1_(std::expm1(eps)), options_(options) {
    const double keep = 1.0 - depolarizing_weight<double>(2, eps);
    anchor_ = Vectord::Zero(size());
    for (int i = 0; i < 3; ++i) anchor_(4 * i) = keep;
  }

  int size() const { return options_.c_zero ? 9 : 12; }
  const Vectord& anchor() const { return anchor_; }
  std::int64_t evaluations() const { return evaluations_; }

  AffineChanneld channel(const Vectord& x) const {
    Matrixd a = Eigen::Map<const Matrixd>(x.data(), 3, 3);
    Vectord c = options_.c_zero ? Vectord(Vectord::Zero(3)) : Vectord(x.tail(3));
    return AffineChanneld(2, std::move(a), std::move(c));
  }

  double qfi_of(const AffineChanneld& ch) const {
    const Vectord out = ch.A * w_ + ch.c;
    if (out.norm() > 1.0 + kPureNormTol) return -std::numeric_limits<double>::infinity();
    return qfi_qubit<double>(out, Vectord(ch.A * dw_)).value;
  }

  double margin_of(const AffineChanneld& ch, const SphereSearchOptions& sphere) {
    std::vector<Vectord> warm;
    if (warm_.size() == 3) warm.push_back(warm_);
    const LdpSup sup = ldp_sup(ch, eps_, sphere, warm);
    warm_ = sup.direction;
    return sup.value - gamma_m1_;
  }

  Evaluation evaluate(const Vectord& x) {
    ++evaluations_;
    const AffineChanneld ch = channel(x);
    Evaluation e;
    e.margin = margin_of(ch, options_.screening);
    e.qfi = qfi_of(ch);
    e.objective = e.qfi - options_.penalty * std::max(0.0, e.margin);
    return e;
  }

  bool feasible(const Evaluation& e) const { return e.margin <= options_.feasibility_tol; }

  // Moves x toward the depolarizing point along the segment until the
  // margin is non-positive. The LDP set is convex and contains the anchor,
  // so the feasible part of the segment is an interval [0, t*].
  Vectord restore(const Vectord& x, const SphereSearchOptions& sphere) {
    if (margin_of(channel(x), sphere) <= options_.feasibility_tol) return x;
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Vectord trial = anchor_ + mid * (x - anchor_);
      if (margin_of(channel(trial), sphere) <= options_.feasibility_tol) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return anchor_ + lo * (x - anchor_);
  }

  // Coordinate pattern search on the penalized objective, restoring
  // feasibility after every sweep. Returns the best feasible point seen.
  Vectord run(Vectord x) {
    x = restore(x, options_.screening);
    Evaluation current = evaluate(x);
    Vectord best = x;
    double best_qfi = feasible(current) ? current.qfi : -std::numeric_limits<double>::infinity();
    double step = options_.initial_step;
    while (step >= options_.min_step && evaluations_ < options_.max_evaluations) {
      const double before = current.objective;
      for (int k = 0; k < size() && evaluations_ < options_.max_evaluations; ++k) {
        for (double sign : {1.0, -1.0}) {
          Vectord trial = x;
          trial(k) += sign * step;
          const Evaluation e = evaluate(trial);
          if (e.objective > current.objective) {
            x = std::move(trial);
            current = e;
            break;
          }
        }
      }
      if (!feasible(current)) {
        x = restore(x, options_.screening);
        current = evaluate(x);
      }
      if (feasible(current) && current.qfi > best_qfi) {
        best_qfi = current.qfi;
        best = x;
      }
      if (!(current.objective > before)) step *= options_.step_shrink;
    }
    return best;
  }

 private:
  Vectord w_;
  Vectord dw_;
  double eps_;
  double gamma_m1_;
  OptimizerOptions options_;
  Vectord anchor_;
  Vectord warm_;
  std::int64_t evaluations_ = 0;
};

Matrixd random_rotation(Engine& engine) {
  std::normal_distribution<double> normal;
  Matrixd g(3, 3);
  for (int i = 0; i < 9; ++i) g(i) = normal(engine);
  Eigen::HouseholderQR<Matrixd> qr(g);
  Matrixd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

Vectord start_point(int index, const Vectord& anchor, double keep, bool c_zero,
                    Engine& engine) {
  if (index == 0) return anchor;
  std::normal_distribution<double> normal;
  Vectord x = anchor;
  if (index % 2 == 1) {
    for (int i = 0; i < 9; ++i) x(i) += 0.3 * keep * normal(engine);
    if (!c_zero) {
      for (int i = 9; i < 12; ++i) x(i) = 0.2 * normal(engine);
    }
  } else {
    const Matrixd a = keep * random_rotation(engine);
    x.head(9) = Eigen::Map<const Vectord>(a.data(), 9);
    if (!c_zero) x.tail(3).setZero();
  }
  return x;
}

struct StartOutcome {
  AffineChanneld channel;
  double qfi = -std::numeric_limits<double>::infinity();
  double margin = 0.0;
  std::int64_t evaluations = 0;
};

}  // namespace

ChannelSearchResult maximize_qfi(const StateFamily& fam, double lambda, double eps,
                                 int starts, std::uint64_t seed,
                                 const OptimizerOptions& options) {
  if (fam.d != 2) {
    throw Error(ErrorCode::kUnsupported,
                "channel search needs qubit certification (d = 2)", fam.d);
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidBudget, "channel search needs eps > 0", eps);
  }
  if (starts < 1) {
    throw Error(ErrorCode::kInvalidInput, "channel search needs >= 1 start", starts);
  }
  const Vectord w = fam.omega(lambda);
  const Vectord dw = fam.derivative(lambda);
  const double keep = 1.0 - depolarizing_weight<double>(2, eps);

  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(starts));
  parallel_for(outcomes.size(), [&](std::size_t i) {
    Engine engine = make_stream(seed, i);
    StartSearch search(w, dw, eps, options);
    const Vectord x0 = start_point(static_cast<int>(i), search.anchor(), keep,
                                   options.c_zero, engine);
    Vectord best = search.run(x0);
    // Re-check with the full sphere search; a missed maximizer during
    // screening is repaired by the same restoration.
    const SphereSearchOptions full;
    AffineChanneld ch = search.channel(best);
    double margin = ldp_margin(ch, eps, full);
    if (margin > options.feasibility_tol) {
      best = search.restore(best, full);
      ch = search.channel(best);
      margin = ldp_margin(ch, eps, full);
    }
    outcomes[i] = {ch, search.qfi_of(ch), margin, search.evaluations()};
  });

  ChannelSearchResult result;
  result.eps = eps;
  result.starts = starts;
  result.seed = seed;
  result.c_zero = options.c_zero;
  std::size_t winner = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    result.evaluations += outcomes[i].evaluations;
    if (outcomes[i].qfi > outcomes[winner].qfi) winner = i;
  }
  if (!std::isfinite(outcomes[winner].qfi)) {
    throw Error(ErrorCode::kInternal, "channel search found no feasible point");
  }
  result.best_channel = outcomes[winner].channel;
  result.best_qfi = outcomes[winner].qfi;
  result.feasibility_margin = outcomes[winner].margin;
  result.depolarizing_qfi = output_qfi(fam, lambda, depolarizing<double>(2, eps)).value;

  const Thm1Constants k = constants_thm1(fam, lambda);
  if (options.c_zero && eps < 0.5) {
    result.fisher_cap = fisher_cap_thm2(fam, lambda, eps);
    result.cap_kind = "thm2";
  } else if (k.C1) {
    result.fisher_cap = fisher_cap_thm1(fam, lambda, eps);
    result.cap_kind = "thm1";
  }
  if (result.fisher_cap) result.cap_ratio = result.best_qfi / *result.fisher_cap;
  return result;
}

std::vector<ChannelSearchResult> sweep(const StateFamily& fam, double lambda,
                                       const std::vector<double>& eps_grid,
                                       int starts, std::uint64_t seed,
                                       const OptimizerOptions& options) {
  for (double eps : eps_grid) {
    if (!(eps > 0.0)) {
      throw Error(ErrorCode::kInvalidBudget, "every grid budget must be > 0", eps);
    }
  }
  std::vector<ChannelSearchResult> rows;
  rows.reserve(eps_grid.size());
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    rows.push_back(maximize_qfi(fam, lambda, eps_grid[i], starts, seed + i, options));
  }
  return rows;
}

}  // namespace qldp
