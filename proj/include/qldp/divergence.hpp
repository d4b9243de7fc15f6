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

// Trace norms and the quantum hockey-stick divergence
//   E_gamma(rho || sigma) = (1/2) |rho - gamma sigma|_1 + (1/2)(1 - gamma).

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cassert>
#include <cmath>

#include "qldp/bloch.hpp"
#include "qldp/error.hpp"

namespace qldp {

inline constexpr double kTraceNormHermitianTol = 1e-10;

// |m I + n.sigma|_1 = |m - |n|| + |m + |n||.
template <typename Scalar, typename Derived>
Scalar trace_norm_qubit(Scalar m, const Eigen::MatrixBase<Derived>& n) {
  using std::abs;
  const Scalar r = n.norm();
  return abs(m - r) + abs(m + r);
}

template <typename Scalar>
Scalar trace_norm_eigen(const ComplexMatrix<Scalar>& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(
      hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

// Sum of absolute eigenvalues of a Hermitian matrix. 2x2 inputs are split as
// m I + n.sigma and use the closed form.
template <typename Scalar>
Scalar trace_norm(const ComplexMatrix<Scalar>& hermitian) {
  if (hermitian.rows() != hermitian.cols()) {
    throw Error(ErrorCode::kInvalidInput, "trace norm needs a square matrix");
  }
  const Scalar defect = hermiticity_defect(hermitian);
  if (defect > Scalar(kTraceNormHermitianTol)) {
    throw Error(ErrorCode::kInvalidInput, "trace norm input is not Hermitian",
                static_cast<double>(defect));
  }
  if (hermitian.rows() == 2) {
    const auto& sigma = generators<Scalar>(2);
    const Scalar m = hermitian.trace().real() / Scalar(2);
    Eigen::Matrix<Scalar, 3, 1> n;
    for (int k = 0; k < 3; ++k) {
      n(k) = (hermitian * sigma[k]).trace().real() / Scalar(2);
    }
    const Scalar fast = trace_norm_qubit(m, n);
    assert(std::abs(fast - trace_norm_eigen(hermitian)) <=
           Scalar(1e-10) * (Scalar(1) + fast));
    return fast;
  }
  return trace_norm_eigen(hermitian);
}

template <typename Scalar>
void check_hockey_stick_args(int d_rho, int d_sigma, Scalar gamma) {
  if (d_rho != d_sigma) {
    throw Error(ErrorCode::kDimensionMismatch,
                "hockey-stick arguments have different dimensions");
  }
  if (!(gamma >= Scalar(1))) {
    throw Error(ErrorCode::kInvalidInput, "hockey-stick requires gamma >= 1",
                static_cast<double>(gamma));
  }
}

template <typename Scalar>
Scalar hockey_stick(const DensityMatrix<Scalar>& rho,
                    const DensityMatrix<Scalar>& sigma, Scalar gamma) {
  check_hockey_stick_args(rho.d, sigma.d, gamma);
  const ComplexMatrix<Scalar> diff =
      rho.rho - std::complex<Scalar>(gamma) * sigma.rho;
  const Scalar value =
      Scalar(0.5) * trace_norm(diff) + Scalar(0.5) * (Scalar(1) - gamma);
  return std::max(Scalar(0), value);
}

// Qubit closed form on Bloch vectors:
// max{0, (1/2)|w - gamma v| + (1/2)(1 - gamma)}.
template <typename Scalar>
Scalar hockey_stick_qubit(const Vector<Scalar>& w, const Vector<Scalar>& v,
                          Scalar gamma) {
  check_hockey_stick_args(static_cast<int>(w.size()),
                          static_cast<int>(v.size()), gamma);
  return std::max(Scalar(0), Scalar(0.5) * (w - gamma * v).norm() +
                                 Scalar(0.5) * (Scalar(1) - gamma));
}

template <typename Scalar>
Scalar trace_distance(const DensityMatrix<Scalar>& rho,
                      const DensityMatrix<Scalar>& sigma) {
  return hockey_stick(rho, sigma, Scalar(1));
}

}  // namespace qldp
