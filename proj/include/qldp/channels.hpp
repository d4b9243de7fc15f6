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

// Affine Bloch-space channels w -> A w + c.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "qldp/bloch.hpp"
#include "qldp/error.hpp"
#include "qldp/sphere.hpp"

namespace qldp {

inline constexpr double kImageTol = 1e-9;

template <typename Scalar>
struct AffineChannel {
  int d = 2;
  Matrix<Scalar> A;
  Vector<Scalar> c;

  AffineChannel()
      : A(Matrix<Scalar>::Identity(3, 3)), c(Vector<Scalar>::Zero(3)) {}
  AffineChannel(int dim, Matrix<Scalar> a, Vector<Scalar> offset)
      : d(dim), A(std::move(a)), c(std::move(offset)) {
    internal::check_dimension(d);
    const int n = bloch_size(d);
    if (A.rows() != n || A.cols() != n || c.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "channel needs an (d^2-1)x(d^2-1) matrix and a (d^2-1) offset");
    }
  }

  static AffineChannel identity(int dim) {
    const int n = bloch_size(dim);
    return AffineChannel(dim, Matrix<Scalar>::Identity(n, n),
                         Vector<Scalar>::Zero(n));
  }
};

using AffineChanneld = AffineChannel<double>;

template <typename Scalar>
BlochVector<Scalar> apply(const AffineChannel<Scalar>& ch,
                          const BlochVector<Scalar>& v) {
  if (v.d != ch.d || v.w.size() != ch.c.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "channel and Bloch vector dimensions differ");
  }
  return BlochVector<Scalar>(ch.d, ch.A * v.w + ch.c);
}

// Mixing weight p of the depolarizing channel p I/d + (1-p) rho that is
// exactly eps-LDP: p = d / (d - 1 + e^eps), i.e. 2 / (1 + e^eps) for qubits.
template <typename Scalar = double>
Scalar depolarizing_weight(int d, Scalar eps) {
  internal::check_dimension(d);
  if (!(eps >= Scalar(0))) {
    throw Error(ErrorCode::kInvalidBudget, "privacy budget must be >= 0",
                static_cast<double>(eps));
  }
  using std::exp;
  return Scalar(d) / (Scalar(d - 1) + exp(eps));
}

template <typename Scalar = double>
AffineChannel<Scalar> depolarizing(int d, Scalar eps) {
  const Scalar p = depolarizing_weight<Scalar>(d, eps);
  const int n = bloch_size(d);
  return AffineChannel<Scalar>(d, (Scalar(1) - p) * Matrix<Scalar>::Identity(n, n),
                               Vector<Scalar>::Zero(n));
}

// max over |w| <= r_d of |A w + c|, attained on the sphere |w| = r_d.
template <typename Scalar>
Scalar image_radius(const AffineChannel<Scalar>& ch,
                    const SphereSearchOptions& options = {}) {
  const Scalar r = bloch_radius<Scalar>(ch.d);
  const int n = bloch_size(ch.d);
  if (ch.A.isZero(0)) return ch.c.norm();
  auto objective = [&](const Vector<Scalar>& u) {
    return (r * (ch.A * u) + ch.c).squaredNorm();
  };
  auto ascent = [&](const Vector<Scalar>& u) -> Vector<Scalar> {
    return ch.A.transpose() * (r * (ch.A * u) + ch.c);
  };
  const auto best = maximize_on_sphere<Scalar>(n, objective, ascent, options);
  using std::sqrt;
  return sqrt(best.value);
}

template <typename Scalar>
struct NecessaryChecks {
  Scalar offset_norm;
  Scalar spectral_norm;
  bool ok;
};

// Cheap qubit conditions implied by the image condition: |c| <= 1 and
// sigma_max(A) <= 2.
template <typename Scalar>
NecessaryChecks<Scalar> necessary_checks(const AffineChannel<Scalar>& ch) {
  const Scalar r = bloch_radius<Scalar>(ch.d);
  Eigen::JacobiSVD<Matrix<Scalar>> svd(ch.A);
  NecessaryChecks<Scalar> out;
  out.offset_norm = ch.c.norm();
  out.spectral_norm = svd.singularValues()(0);
  out.ok = out.offset_norm <= r + Scalar(kImageTol) &&
           out.spectral_norm <= Scalar(2) + Scalar(kImageTol);
  return out;
}

template <typename Scalar>
bool is_valid_image(const AffineChannel<Scalar>& ch,
                    const SphereSearchOptions& options = {}) {
  if (ch.d == 2 && !necessary_checks(ch).ok) return false;
  return image_radius(ch, options) <= bloch_radius<Scalar>(ch.d) + Scalar(kImageTol);
}

// Choi matrix (normalized on the maximally entangled state) of the qubit map
// X -> tr(X) (I + c.sigma)/2 + (1/2) (A w_X).sigma, with w_X,k = tr(X sigma_k).
template <typename Scalar>
ComplexMatrix<Scalar> choi_matrix(const AffineChannel<Scalar>& ch) {
  if (ch.d != 2) {
    throw Error(ErrorCode::kUnsupported,
                "complete-positivity check is only available for qubits", ch.d);
  }
  using Complex = std::complex<Scalar>;
  const auto& sigma = generators<Scalar>(2);
  ComplexMatrix<Scalar> choi = ComplexMatrix<Scalar>::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix<Scalar> unit = ComplexMatrix<Scalar>::Zero(2, 2);
      unit(i, j) = Complex(1);
      Vector<Complex> w(3);
      for (int k = 0; k < 3; ++k) w(k) = (unit * sigma[k]).trace();
      const Vector<Complex> mapped = ch.A.template cast<Complex>() * w;
      ComplexMatrix<Scalar> out =
          unit.trace() * (ComplexMatrix<Scalar>::Identity(2, 2) +
                          generator_combination(ch.c, 2)) /
          Complex(2);
      for (int k = 0; k < 3; ++k) out += mapped(k) * sigma[k] / Complex(2);
      choi.block(2 * i, 2 * j, 2, 2) = out / Complex(2);
    }
  }
  return choi;
}

template <typename Scalar>
struct CpCheck {
  bool completely_positive;
  Scalar min_eigenvalue;
};

template <typename Scalar>
CpCheck<Scalar> cp_check(const AffineChannel<Scalar>& ch) {
  const ComplexMatrix<Scalar> choi = choi_matrix(ch);
  const Scalar lowest = min_eigenvalue(choi);
  return {lowest >= Scalar(-kPositivityTol), lowest};
}

}  // namespace qldp
