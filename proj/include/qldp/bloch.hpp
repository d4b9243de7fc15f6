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

// Generalized Bloch representation of qudit states.
//
// A state on C^d is written rho = I/d + (1/2) w . eta, where eta is the
// generalized Gell-Mann basis of su(d) normalized to trace(eta_i eta_j) =
// 2 delta_ij. For d = 2 this is exactly the Pauli basis and
// rho = (I + w . sigma) / 2.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qldp/error.hpp"

namespace qldp {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Vectord = Vector<double>;
using Matrixd = Matrix<double>;
using ComplexMatrixd = ComplexMatrix<double>;

inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;

constexpr int bloch_size(int d) { return d * d - 1; }

// Radius of the ball enclosing the Bloch body: 1 for qubits,
// sqrt(2(d-1)/d) in general (the two coincide at d = 2).
template <typename Scalar = double>
Scalar bloch_radius(int d) {
  using std::sqrt;
  return sqrt(Scalar(2) * Scalar(d - 1) / Scalar(d));
}

template <typename Scalar>
struct GeneratorBasis {
  int d = 0;
  std::vector<ComplexMatrix<Scalar>> etas;

  int size() const { return static_cast<int>(etas.size()); }
  const ComplexMatrix<Scalar>& operator[](int i) const { return etas[i]; }
};

template <typename Scalar>
struct BlochVector {
  int d = 2;
  Vector<Scalar> w;

  BlochVector() : w(Vector<Scalar>::Zero(3)) {}
  BlochVector(int dim, Vector<Scalar> coords) : d(dim), w(std::move(coords)) {
    if (d < 2) {
      throw Error(ErrorCode::kInvalidDimension, "dimension must be >= 2", d);
    }
    if (w.size() != bloch_size(d)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "Bloch vector length must be d^2-1 = " +
                      std::to_string(bloch_size(d)),
                  static_cast<double>(w.size()));
    }
  }

  Scalar norm() const { return w.norm(); }
};

template <typename Scalar>
struct DensityMatrix {
  int d = 2;
  ComplexMatrix<Scalar> rho;
};

using GeneratorBasisd = GeneratorBasis<double>;
using BlochVectord = BlochVector<double>;
using DensityMatrixd = DensityMatrix<double>;

namespace internal {

template <typename Scalar>
GeneratorBasis<Scalar> build_gell_mann(int d) {
  using Complex = std::complex<Scalar>;
  GeneratorBasis<Scalar> basis;
  basis.d = d;
  basis.etas.reserve(bloch_size(d));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(d, d);
      m(j, k) = m(k, j) = Complex(1, 0);
      basis.etas.push_back(std::move(m));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(d, d);
      m(j, k) = Complex(0, -1);
      m(k, j) = Complex(0, 1);
      basis.etas.push_back(std::move(m));
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(d, d);
    using std::sqrt;
    const Scalar scale = sqrt(Scalar(2) / Scalar(l * (l + 1)));
    for (int i = 0; i < l; ++i) m(i, i) = Complex(scale, 0);
    m(l, l) = Complex(-Scalar(l) * scale, 0);
    basis.etas.push_back(std::move(m));
  }
  return basis;
}

inline void check_dimension(int d) {
  if (d < 2) {
    throw Error(ErrorCode::kInvalidDimension,
                "dimension must be >= 2, got " + std::to_string(d), d);
  }
}

}  // namespace internal

// Generalized Gell-Mann basis: symmetric pairs (j<k lexicographic), then
// antisymmetric pairs, then diagonal. d = 2 gives (sigma_x, sigma_y, sigma_z).
// The returned reference is owned by a process-wide write-once cache.
template <typename Scalar = double>
const GeneratorBasis<Scalar>& generators(int d) {
  internal::check_dimension(d);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GeneratorBasis<Scalar>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[d];
  if (!slot) {
    slot = std::make_unique<const GeneratorBasis<Scalar>>(
        internal::build_gell_mann<Scalar>(d));
  }
  return *slot;
}

// sum_i w_i eta_i for a real or complex coefficient vector.
template <typename Derived>
auto generator_combination(const Eigen::MatrixBase<Derived>& w, int d) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const auto& basis = generators<Real>(d);
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(d, d);
  for (int i = 0; i < basis.size(); ++i) {
    out += std::complex<Real>(w(i)) * basis[i];
  }
  return out;
}

template <typename Scalar>
Scalar hermiticity_defect(const ComplexMatrix<Scalar>& m) {
  if (m.size() == 0) return Scalar(0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar min_eigenvalue(const ComplexMatrix<Scalar>& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(
      hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// rho = I/d + (1/2) w . eta without the positivity check.
template <typename Scalar>
DensityMatrix<Scalar> density_from_coords(int d, const Vector<Scalar>& w) {
  DensityMatrix<Scalar> out{d, ComplexMatrix<Scalar>::Identity(d, d) /
                                   std::complex<Scalar>(Scalar(d))};
  out.rho += std::complex<Scalar>(Scalar(0.5)) * generator_combination(w, d);
  return out;
}

// rho = I/d + (1/2) w . eta. Throws kNotAState (value = the eigenvalue)
// when the result has an eigenvalue below -1e-10.
template <typename Scalar>
DensityMatrix<Scalar> to_density(const BlochVector<Scalar>& v) {
  const int d = v.d;
  internal::check_dimension(d);
  if (v.w.size() != bloch_size(d)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Bloch vector length does not match dimension");
  }
  DensityMatrix<Scalar> out = density_from_coords(d, v.w);
  const Scalar lowest = min_eigenvalue(out.rho);
  if (lowest < Scalar(-kPositivityTol)) {
    throw Error(ErrorCode::kNotAState,
                "Bloch vector maps to an operator with negative eigenvalue",
                static_cast<double>(lowest));
  }
  return out;
}

// w_i = trace(rho eta_i).
template <typename Scalar>
BlochVector<Scalar> from_density(const DensityMatrix<Scalar>& m) {
  const int d = m.d;
  internal::check_dimension(d);
  if (m.rho.rows() != d || m.rho.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "density matrix must be d x d");
  }
  const Scalar defect = hermiticity_defect(m.rho);
  if (defect > Scalar(kHermitianTol)) {
    throw Error(ErrorCode::kInvalidInput, "density matrix is not Hermitian",
                static_cast<double>(defect));
  }
  const auto& basis = generators<Scalar>(d);
  Vector<Scalar> w(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    w(i) = (m.rho * basis[i]).trace().real();
  }
  return BlochVector<Scalar>(d, std::move(w));
}

// Validates the DensityMatrix invariants (unit trace, Hermitian, PSD).
template <typename Scalar>
DensityMatrix<Scalar> make_density(ComplexMatrix<Scalar> rho) {
  const int d = static_cast<int>(rho.rows());
  internal::check_dimension(d);
  if (rho.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "density matrix must be square");
  }
  const Scalar defect = hermiticity_defect(rho);
  if (defect > Scalar(kHermitianTol)) {
    throw Error(ErrorCode::kInvalidInput, "density matrix is not Hermitian",
                static_cast<double>(defect));
  }
  using std::abs;
  const Scalar trace = rho.trace().real();
  if (abs(trace - Scalar(1)) > Scalar(kTraceTol)) {
    throw Error(ErrorCode::kInvalidInput, "density matrix trace must be 1",
                static_cast<double>(trace));
  }
  const Scalar lowest = min_eigenvalue(rho);
  if (lowest < Scalar(-kPositivityTol)) {
    throw Error(ErrorCode::kNotAState, "density matrix is not positive",
                static_cast<double>(lowest));
  }
  return DensityMatrix<Scalar>{d, std::move(rho)};
}

template <typename Scalar>
bool is_state(const BlochVector<Scalar>& v) {
  return min_eigenvalue(density_from_coords(v.d, v.w).rho) >=
         Scalar(-kPositivityTol);
}

}  // namespace qldp
