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

// Multi-start maximization of convex functions over the unit sphere.
//
// For a convex objective f, maximizing the linearization at u over the unit
// ball gives u' = grad f(u) / |grad f(u)|, and convexity guarantees
// f(u') >= f(u). Iterating this projected ascent step from many seeds finds
// the maximum on the sphere, which is also the maximum over the ball.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "qldp/bloch.hpp"

namespace qldp {

struct SphereSearchOptions {
  int lattice_points = 256;
  int restarts = 64;
  double step_tol = 1e-12;
  int max_iterations = 20000;
};

template <typename Scalar>
struct SphereMaximum {
  Scalar value = Scalar(0);
  Vector<Scalar> argmax;
};

// n points spread evenly over S^2, one per column.
template <typename Scalar = double>
Matrix<Scalar> fibonacci_sphere(int n) {
  Matrix<Scalar> points(3, n);
  const Scalar golden_angle =
      Scalar(M_PI) * (Scalar(3) - std::sqrt(Scalar(5)));
  for (int i = 0; i < n; ++i) {
    const Scalar z = Scalar(1) - (Scalar(2 * i + 1)) / Scalar(n);
    const Scalar r = std::sqrt(std::max(Scalar(0), Scalar(1) - z * z));
    const Scalar phi = golden_angle * Scalar(i);
    points(0, i) = r * std::cos(phi);
    points(1, i) = r * std::sin(phi);
    points(2, i) = z;
  }
  return points;
}

// Deterministic seed directions on S^{dim-1}: the Fibonacci lattice for
// dim = 3, otherwise the +/- coordinate axes followed by normalized Gaussian
// draws from a fixed stream.
template <typename Scalar = double>
Matrix<Scalar> sphere_seeds(int dim, int n) {
  if (dim == 3) return fibonacci_sphere<Scalar>(n);
  Matrix<Scalar> points(dim, n);
  std::mt19937_64 engine(0x5eed5eedULL + static_cast<std::uint64_t>(dim));
  std::normal_distribution<double> normal;
  for (int i = 0; i < n; ++i) {
    if (i < 2 * dim) {
      points.col(i).setZero();
      points(i / 2, i) = (i % 2 == 0) ? Scalar(1) : Scalar(-1);
      continue;
    }
    Vector<Scalar> g(dim);
    do {
      for (int k = 0; k < dim; ++k) g(k) = Scalar(normal(engine));
    } while (g.norm() == Scalar(0));
    points.col(i) = g.normalized();
  }
  return points;
}

// Maximizes a convex `objective` over the unit sphere in R^dim. `ascent`
// returns a (sub)gradient at u; the iteration stops when the step is below
// step_tol, the gradient vanishes, or the objective stops increasing.
template <typename Scalar, typename Objective, typename Ascent>
SphereMaximum<Scalar> maximize_on_sphere(
    int dim, Objective&& objective, Ascent&& ascent,
    const SphereSearchOptions& options = {},
    std::span<const Vector<Scalar>> warm_starts = {}) {
  const Matrix<Scalar> seeds = sphere_seeds<Scalar>(dim, options.lattice_points);
  std::vector<Scalar> seed_values(seeds.cols());
  for (Eigen::Index i = 0; i < seeds.cols(); ++i) {
    seed_values[i] = objective(Vector<Scalar>(seeds.col(i)));
  }
  std::vector<int> order(seeds.cols());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return seed_values[a] > seed_values[b];
  });

  std::vector<Vector<Scalar>> starts;
  for (const auto& w : warm_starts) {
    if (w.size() == dim && w.norm() > Scalar(0)) starts.push_back(w.normalized());
  }
  const int take = std::min<int>(options.restarts, static_cast<int>(order.size()));
  for (int i = 0; i < take; ++i) starts.emplace_back(seeds.col(order[i]));

  SphereMaximum<Scalar> best;
  best.value = -std::numeric_limits<Scalar>::infinity();
  for (const auto& start : starts) {
    Vector<Scalar> u = start;
    Scalar value = objective(u);
    for (int it = 0; it < options.max_iterations; ++it) {
      Vector<Scalar> g = ascent(u);
      const Scalar gnorm = g.norm();
      if (!(gnorm > Scalar(0))) break;
      Vector<Scalar> next = g / gnorm;
      const Scalar next_value = objective(next);
      if (next_value < value) break;
      const Scalar step = (next - u).norm();
      u = std::move(next);
      value = next_value;
      if (step < Scalar(options.step_tol)) break;
    }
    if (value > best.value) {
      best.value = value;
      best.argmax = u;
    }
  }
  return best;
}

}  // namespace qldp
