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

#include "qldp/families.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace qldp {

bool StateFamily::contains(double lambda) const {
  if (!std::isfinite(lambda)) return false;
  if (closed_domain) return lambda >= lower && lambda <= upper;
  return lambda > lower && lambda < upper;
}

Vectord StateFamily::omega(double lambda) const {
  if (!contains(lambda)) {
    throw Error(ErrorCode::kInvalidInput,
                "lambda lies outside the domain of family '" + label + "'",
                lambda);
  }
  return omega_of(lambda);
}

Vectord StateFamily::derivative(double lambda) const {
  if (d_omega_of) {
    if (!contains(lambda)) {
      throw Error(ErrorCode::kInvalidInput,
                  "lambda lies outside the domain of family '" + label + "'",
                  lambda);
    }
    return d_omega_of(lambda);
  }
  return family_derivative(*this, lambda);
}

Vectord family_derivative(const StateFamily& fam, double lambda, double h) {
  if (!(h > 0)) {
    throw Error(ErrorCode::kInvalidInput, "finite-difference step must be > 0", h);
  }
  if (!fam.contains(lambda - h) || !fam.contains(lambda + h)) {
    throw Error(ErrorCode::kInvalidInput,
                "lambda +/- h leaves the domain of family '" + fam.label + "'",
                lambda);
  }
  return (fam.omega_of(lambda + h) - fam.omega_of(lambda - h)) / (2.0 * h);
}

StateFamily radial_family() {
  StateFamily fam;
  fam.d = 2;
  fam.label = "radial";
  fam.lower = -1.0;
  fam.upper = 1.0;
  fam.omega_of = [](double l) { return Vectord(Eigen::Vector3d(0, 0, l)); };
  fam.d_omega_of = [](double) { return Vectord(Eigen::Vector3d(0, 0, 1)); };
  return fam;
}

StateFamily scaled_rotation_family(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "rotation radius must lie in [0, 1]", r);
  }
  StateFamily fam;
  fam.d = 2;
  fam.label = r == 1.0 ? "rotation" : "scaled-rotation";
  fam.omega_of = [r](double l) {
    return Vectord(Eigen::Vector3d(r * std::sin(l), 0, r * std::cos(l)));
  };
  fam.d_omega_of = [r](double l) {
    return Vectord(Eigen::Vector3d(r * std::cos(l), 0, -r * std::sin(l)));
  };
  return fam;
}

StateFamily rotation_family() { return scaled_rotation_family(1.0); }

StateFamily axis_family(int d, int k) {
  internal::check_dimension(d);
  const int n = bloch_size(d);
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidInput,
                "axis index must lie in 1..d^2-1", k);
  }
  // I/d + (lambda/2) eta_k stays positive while 1/d + lambda e/2 >= 0 for
  // every eigenvalue e of eta_k.
  Eigen::SelfAdjointEigenSolver<ComplexMatrixd> solver(generators<double>(d)[k - 1],
                                                       Eigen::EigenvaluesOnly);
  const double e_min = solver.eigenvalues().minCoeff();
  const double e_max = solver.eigenvalues().maxCoeff();
  StateFamily fam;
  fam.d = d;
  fam.label = "axis-" + std::to_string(k);
  fam.lower = -2.0 / (d * e_max);
  fam.upper = 2.0 / (d * -e_min);
  fam.omega_of = [n, k](double l) {
    Vectord w = Vectord::Zero(n);
    w(k - 1) = l;
    return w;
  };
  fam.d_omega_of = [n, k](double) {
    Vectord w = Vectord::Zero(n);
    w(k - 1) = 1.0;
    return w;
  };
  return fam;
}

namespace {

// Natural cubic spline through (x_i, y_i) for one component.
struct CubicSpline {
  std::vector<double> x, y, second;

  CubicSpline(std::vector<double> xs, std::vector<double> ys)
      : x(std::move(xs)), y(std::move(ys)), second(x.size(), 0.0) {
    const std::size_t n = x.size();
    if (n < 3) return;
    // Thomas algorithm on the interior second derivatives.
    std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x[i] - x[i - 1];
      const double h1 = x[i + 1] - x[i];
      diag[i] = 2.0 * (h0 + h1);
      upper[i] = h1;
      rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
      if (i > 1) {
        const double factor = h0 / diag[i - 1];
        diag[i] -= factor * upper[i - 1];
        rhs[i] -= factor * rhs[i - 1];
      }
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      second[i] = (rhs[i] - upper[i] * second[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  std::size_t segment(double t) const {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    return std::min(i, x.size() - 2);
  }

  double value(double t) const {
    const std::size_t i = segment(t);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - t) / h;
    const double b = (t - x[i]) / h;
    return a * y[i] + b * y[i + 1] +
           ((a * a * a - a) * second[i] + (b * b * b - b) * second[i + 1]) * h * h / 6.0;
  }

  double slope(double t) const {
    const std::size_t i = segment(t);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - t) / h;
    const double b = (t - x[i]) / h;
    return (y[i + 1] - y[i]) / h +
           (-(3.0 * a * a - 1.0) * second[i] + (3.0 * b * b - 1.0) * second[i + 1]) *
               h / 6.0;
  }
};

int dimension_for_length(int n) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n + 1))));
  if (d < 2 || d * d - 1 != n) {
    throw Error(ErrorCode::kInvalidInput,
                "table rows must carry d^2-1 Bloch coordinates", n);
  }
  return d;
}

}  // namespace

StateFamily table_family(const std::vector<double>& lambdas,
                         const std::vector<Vectord>& omegas, std::string label) {
  if (lambdas.size() < 2 || lambdas.size() != omegas.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "a table family needs at least two (lambda, w) rows");
  }
  const int n = static_cast<int>(omegas.front().size());
  const int d = dimension_for_length(n);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (omegas[i].size() != n) {
      throw Error(ErrorCode::kInvalidInput, "table rows have inconsistent widths");
    }
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw Error(ErrorCode::kInvalidInput, "table lambdas must be increasing",
                  lambdas[i]);
    }
  }
  auto splines = std::make_shared<std::vector<CubicSpline>>();
  for (int k = 0; k < n; ++k) {
    std::vector<double> ys(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) ys[i] = omegas[i](k);
    splines->emplace_back(lambdas, std::move(ys));
  }
  StateFamily fam;
  fam.d = d;
  fam.label = std::move(label);
  fam.lower = lambdas.front();
  fam.upper = lambdas.back();
  fam.closed_domain = true;
  fam.omega_of = [splines, n](double l) {
    Vectord w(n);
    for (int k = 0; k < n; ++k) w(k) = (*splines)[k].value(l);
    return w;
  };
  fam.d_omega_of = [splines, n](double l) {
    Vectord w(n);
    for (int k = 0; k < n; ++k) w(k) = (*splines)[k].slope(l);
    return w;
  };
  return fam;
}

StateFamily read_table_family(std::istream& in, std::string label) {
  std::vector<double> lambdas;
  std::vector<Vectord> omegas;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::vector<double> values;
    double v;
    while (row >> v) values.push_back(v);
    if (!row.eof()) {
      throw Error(ErrorCode::kInvalidInput, "malformed table row: " + line);
    }
    if (values.size() < 2) {
      throw Error(ErrorCode::kInvalidInput, "table row needs lambda and w");
    }
    lambdas.push_back(values[0]);
    omegas.emplace_back(Eigen::Map<const Vectord>(values.data() + 1,
                                                  static_cast<Eigen::Index>(values.size() - 1)));
  }
  return table_family(lambdas, omegas, std::move(label));
}

StateFamily load_table_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open family table " + path);
  return read_table_family(in, path);
}

StateFamily make_family(const std::string& name, int dim, double radius) {
  if (name == "radial") return radial_family();
  if (name == "rotation") return rotation_family();
  if (name == "scaled-rotation") {
    if (!(radius < 1.0)) {
      throw Error(ErrorCode::kInvalidInput,
                  "scaled-rotation needs a radius below 1", radius);
    }
    return scaled_rotation_family(radius);
  }
  if (name.rfind("axis-", 0) == 0) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(name.substr(5), &used);
      if (used != name.size() - 5) throw std::invalid_argument(name);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput, "bad axis family name: " + name);
    }
    return axis_family(dim, k);
  }
  std::ifstream probe(name);
  if (probe) return read_table_family(probe, name);
  throw Error(ErrorCode::kInvalidInput, "unknown family: " + name);
}

StateFamily privatize(const StateFamily& fam, const AffineChanneld& ch) {
  if (ch.d != fam.d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "channel dimension does not match the family");
  }
  StateFamily out = fam;
  out.label = fam.label + "+channel";
  out.omega_of = [fam, ch](double l) -> Vectord { return ch.A * fam.omega_of(l) + ch.c; };
  out.d_omega_of = [fam, ch](double l) -> Vectord { return ch.A * fam.derivative(l); };
  return out;
}

QfiResultd family_qfi(const StateFamily& fam, double lambda) {
  const Vectord w = fam.omega(lambda);
  const Vectord dw = fam.derivative(lambda);
  if (fam.d == 2) return qfi_qubit<double>(w, dw);
  return qfi_qudit<double>(fam.d, w, dw);
}

QfiResultd output_qfi(const StateFamily& fam, double lambda,
                      const AffineChanneld& ch) {
  return family_qfi(privatize(fam, ch), lambda);
}

}  // namespace qldp
