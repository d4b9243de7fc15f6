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

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qldp/bloch.hpp"
#include "qldp/channels.hpp"
#include "qldp/qfi.hpp"

namespace qldp {

inline constexpr double kDefaultFiniteDifferenceStep = 1e-5;

// A differentiable curve lambda -> w(lambda) of Bloch vectors. The domain is
// the open interval (lower, upper) unless `closed_domain` is set.
struct StateFamily {
  int d = 2;
  std::string label;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool closed_domain = false;
  std::function<Vectord(double)> omega_of;
  // Empty when no analytic derivative is known.
  std::function<Vectord(double)> d_omega_of;

  bool contains(double lambda) const;
  Vectord omega(double lambda) const;
  // Analytic derivative when available, otherwise a central difference.
  Vectord derivative(double lambda) const;
};

// (w(lambda + h) - w(lambda - h)) / (2h).
Vectord family_derivative(const StateFamily& fam, double lambda,
                          double h = kDefaultFiniteDifferenceStep);

// w = (0, 0, lambda), lambda in (-1, 1).
StateFamily radial_family();
// w = (sin lambda, 0, cos lambda).
StateFamily rotation_family();
// w = r (sin lambda, 0, cos lambda), 0 <= r < 1.
StateFamily scaled_rotation_family(double r);
// w = lambda e_k (1-based k) on the open interval where the state is valid.
StateFamily axis_family(int d, int k);

// Rows of (lambda, w_1, ..., w_n) with strictly increasing lambda,
// interpolated component-wise by natural cubic splines. d is inferred from n.
StateFamily table_family(const std::vector<double>& lambdas,
                         const std::vector<Vectord>& omegas,
                         std::string label = "table");
StateFamily read_table_family(std::istream& in, std::string label = "table");
StateFamily load_table_family(const std::string& path);

// Names: radial, rotation, scaled-rotation (uses `radius`), axis-k (uses
// `dim`), or a path to a table file.
StateFamily make_family(const std::string& name, int dim = 2,
                        double radius = 0.5);

// The family seen through a channel: w -> A w + c, dw -> A dw.
StateFamily privatize(const StateFamily& fam, const AffineChanneld& ch);

// QFI through the qubit closed form (d = 2) or the qudit quadratic form.
QfiResultd family_qfi(const StateFamily& fam, double lambda);
QfiResultd output_qfi(const StateFamily& fam, double lambda,
                      const AffineChanneld& ch);

}  // namespace qldp
