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

#include "qldp/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qldp {

Engine make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32), 0x71d9u};
  return Engine(seq);
}

double uniform01(Engine& engine) {
  // 53 random bits; bit-identical across standard libraries.
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

Vectord uniform_in_ball(Engine& engine, int n) {
  std::normal_distribution<double> normal;
  Vectord g(n);
  do {
    for (int k = 0; k < n; ++k) g(k) = normal(engine);
  } while (g.norm() == 0.0);
  const double radius = std::pow(uniform01(engine), 1.0 / n);
  return radius * g.normalized();
}

BlochVectord random_state(Engine& engine, int d) {
  if (d == 2) return BlochVectord(2, uniform_in_ball(engine, 3));
  std::normal_distribution<double> normal;
  ComplexMatrixd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = {normal(engine), normal(engine)};
  }
  ComplexMatrixd rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return from_density(DensityMatrixd{d, rho});
}

int thread_count() {
  if (const char* env = std::getenv("QLDP_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t block = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const std::size_t begin = t * block;
        const std::size_t end = std::min(n, begin + block);
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace qldp
