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

// Quantum Fisher information of a one-parameter family of states, in three
// forms: the qubit Bloch closed form, the qudit quadratic form
// dw^T M(w)^{-1} dw, and a direct symmetric-logarithmic-derivative sum used
// as an independent oracle.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qldp/bloch.hpp"
#include "qldp/error.hpp"

namespace qldp {

inline constexpr double kBoundaryTol = 1e-9;
inline constexpr double kPureNormTol = 1e-12;
inline constexpr double kSingularTol = 1e-12;
inline constexpr double kSupportTol = 1e-12;
inline constexpr double kDerivativeTraceTol = 1e-8;

enum class QfiBranch { kInterior, kBoundary };

template <typename Scalar>
struct QfiResult {
  Scalar value = Scalar(0);
  QfiBranch branch = QfiBranch::kInterior;
  bool regularization_used = false;
};

using QfiResultd = QfiResult<double>;

// F = |dw|^2 + <w,dw>^2 / (1 - |w|^2) inside the ball, |dw|^2 on the
// surface. The switch happens at |w| >= 1 - 1e-9; below that the interior
// value is returned even when it is very large.
template <typename Scalar, typename D1, typename D2>
QfiResult<Scalar> qfi_qubit(const Eigen::MatrixBase<D1>& w,
                            const Eigen::MatrixBase<D2>& dw) {
  if (w.size() != 3 || dw.size() != 3) {
    throw Error(ErrorCode::kDimensionMismatch, "qubit QFI needs 3-vectors");
  }
  const Scalar norm = w.norm();
  if (norm > Scalar(1) + Scalar(kPureNormTol)) {
    throw Error(ErrorCode::kInvalidState, "Bloch vector lies outside the unit ball",
                static_cast<double>(norm));
  }
  QfiResult<Scalar> out;
  const Scalar speed2 = dw.squaredNorm();
  if (norm >= Scalar(1) - Scalar(kBoundaryTol)) {
    out.branch = QfiBranch::kBoundary;
    out.value = speed2;
    return out;
  }
  const Scalar overlap = w.dot(dw);
  out.value = speed2 + overlap * overlap / (Scalar(1) - w.squaredNorm());
  return out;
}

namespace internal {

// S_k(i, j) = trace((eta_i eta_j + eta_j eta_i) eta_k), computed from the
// generators themselves.
template <typename Scalar>
struct AnticommutatorTable {
  int d = 0;
  std::vector<Matrix<Scalar>> slices;
};

template <typename Scalar>
AnticommutatorTable<Scalar> build_anticommutator_table(int d) {
  const auto& eta = generators<Scalar>(d);
  const int n = eta.size();
  AnticommutatorTable<Scalar> table;
  table.d = d;
  table.slices.assign(n, Matrix<Scalar>::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const ComplexMatrix<Scalar> anti = eta[i] * eta[j] + eta[j] * eta[i];
      for (int k = 0; k < n; ++k) {
        const Scalar v = (anti * eta[k]).trace().real();
        table.slices[k](i, j) = v;
        table.slices[k](j, i) = v;
      }
    }
  }
  return table;
}

}  // namespace internal

// Write-once per-dimension cache; safe under concurrent first access.
template <typename Scalar = double>
const internal::AnticommutatorTable<Scalar>& anticommutator_table(int d) {
  internal::check_dimension(d);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const internal::AnticommutatorTable<Scalar>>>
      cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[d];
  if (!slot) {
    slot = std::make_unique<const internal::AnticommutatorTable<Scalar>>(
        internal::build_anticommutator_table<Scalar>(d));
  }
  return *slot;
}

// M(w) = (2/d) I - w w^T + G(w), G_ij = (1/4) sum_k S_k(i,j) w_k.
template <typename Scalar>
Matrix<Scalar> qudit_metric(int d, const Vector<Scalar>& w) {
  const int n = bloch_size(d);
  if (w.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "qudit Bloch vector has wrong length");
  }
  const auto& table = anticommutator_table<Scalar>(d);
  Matrix<Scalar> m = (Scalar(2) / Scalar(d)) * Matrix<Scalar>::Identity(n, n) -
                     w * w.transpose();
  for (int k = 0; k < n; ++k) {
    if (w(k) != Scalar(0)) m += (Scalar(0.25) * w(k)) * table.slices[k];
  }
  return m;
}

// Interior branch solves M(w) x = dw; boundary branch (|w| within 1e-9 of
// sqrt(2(d-1)/d)) returns |dw|^2. A positive `regularization` adds a
// diagonal shift to M before the solve.
template <typename Scalar>
QfiResult<Scalar> qfi_qudit(int d, const Vector<Scalar>& w,
                            const Vector<Scalar>& dw,
                            Scalar regularization = Scalar(0)) {
  internal::check_dimension(d);
  const int n = bloch_size(d);
  if (w.size() != n || dw.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "qudit QFI vectors have wrong length");
  }
  const Scalar radius = bloch_radius<Scalar>(d);
  const Scalar norm = w.norm();
  if (norm > radius + Scalar(kPureNormTol)) {
    throw Error(ErrorCode::kInvalidState, "Bloch vector exceeds the qudit radius",
                static_cast<double>(norm));
  }
  QfiResult<Scalar> out;
  if (norm >= radius - Scalar(kBoundaryTol)) {
    out.branch = QfiBranch::kBoundary;
    out.value = dw.squaredNorm();
    return out;
  }
  Matrix<Scalar> m = qudit_metric<Scalar>(d, w);
  if (regularization > Scalar(0)) {
    m.diagonal().array() += regularization;
    out.regularization_used = true;
  }
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(m);
  const Scalar lowest = solver.eigenvalues().minCoeff();
  if (lowest < Scalar(kSingularTol)) {
    throw Error(ErrorCode::kNearSingular,
                "M(w) is near-singular; retry with a regularization shift",
                static_cast<double>(lowest));
  }
  const Vector<Scalar> projected = solver.eigenvectors().transpose() * dw;
  out.value = (projected.array().square() / solver.eigenvalues().array()).sum();
  return out;
}

// F = sum_{j,k: p_j + p_k > 1e-12} 2 |<j| drho |k>|^2 / (p_j + p_k) in the
// eigenbasis of rho. Pairs outside the support are dropped.
template <typename Scalar>
Scalar qfi_sld_oracle(const DensityMatrix<Scalar>& rho,
                      const ComplexMatrix<Scalar>& drho) {
  const int d = rho.d;
  if (drho.rows() != d || drho.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "derivative must be d x d");
  }
  using std::abs;
  const Scalar trace = abs(drho.trace());
  if (trace > Scalar(kDerivativeTraceTol)) {
    throw Error(ErrorCode::kInvalidDerivative, "state derivative must be traceless",
                static_cast<double>(trace));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(rho.rho);
  const auto& p = solver.eigenvalues();
  const ComplexMatrix<Scalar> rotated =
      solver.eigenvectors().adjoint() * drho * solver.eigenvectors();
  Scalar total = Scalar(0);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const Scalar denom = p(j) + p(k);
      if (denom > Scalar(kSupportTol)) {
        total += Scalar(2) * std::norm(rotated(j, k)) / denom;
      }
    }
  }
  return total;
}

// d rho / d lambda = (1/2) dw . eta.
template <typename Scalar>
ComplexMatrix<Scalar> density_derivative(int d, const Vector<Scalar>& dw) {
  return std::complex<Scalar>(Scalar(0.5)) * generator_combination(dw, d);
}

}  // namespace qldp
