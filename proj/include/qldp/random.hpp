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

// Seeded random streams and deterministic parallel loops.

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>

#include "qldp/bloch.hpp"

namespace qldp {

using Engine = std::mt19937_64;

// Independent stream `index` of a master seed. The same (seed, index) pair
// always yields the same sequence, regardless of which thread draws it.
Engine make_stream(std::uint64_t seed, std::uint64_t index);

double uniform01(Engine& engine);

// Uniform in the unit ball of R^n.
Vectord uniform_in_ball(Engine& engine, int n);

// Hilbert-Schmidt (flat Bloch-volume) random qudit state: rho = G G^dag /
// tr(G G^dag) for a complex Ginibre matrix G. For d = 2 this is uniform in
// the Bloch ball.
BlochVectord random_state(Engine& engine, int d);

// Threads used by parallel_for: QLDP_THREADS when set, else the hardware
// concurrency (at least 1).
int thread_count();

// Calls body(i) for i in [0, n) across thread_count() threads in contiguous
// blocks. Callers write into per-index slots, so results do not depend on
// the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Pairwise summation in a fixed tree order.
double pairwise_sum(std::span<const double> values);

}  // namespace qldp
