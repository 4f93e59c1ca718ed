// Copyright 2026 The Sketchy Authors. All Rights Reserved.
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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "sketchy/linalg.hpp"

namespace sketchy {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;

double max_off_diagonal(const Matrix& a) {
  double off = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index q = 1; q < n; ++q)
    for (Eigen::Index p = 0; p < q; ++p) off = std::max(off, std::abs(a(p, q)));
  return off;
}

double sum_off_diagonal(const Matrix& a) {
  double sum = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index q = 1; q < n; ++q)
    for (Eigen::Index p = 0; p < q; ++p) sum += std::abs(a(p, q));
  return sum;
}

// Applies the rotation that annihilates a(p, q), keeping `a` symmetric.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double h = a(q, q) - a(p, p);
  double t;
  if (std::abs(h) + 100.0 * std::abs(apq) == std::abs(h)) {
    t = apq / h;
  } else {
    const double theta = 0.5 * h / apq;
    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  const Eigen::Index n = a.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double g = a(r, p);
    const double k = a(r, q);
    const double rp = g - s * (k + g * tau);
    const double rq = k + s * (g - k * tau);
    a(r, p) = rp;
    a(p, r) = rp;
    a(r, q) = rq;
    a(q, r) = rq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (Eigen::Index r = 0; r < n; ++r) {
    const double g = v(r, p);
    const double k = v(r, q);
    v(r, p) = g - s * (k + g * tau);
    v(r, q) = k + s * (g - k * tau);
  }
}

}  // namespace

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void require_symmetric(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw LinalgError(os.str());
  }
  if (m.rows() == 0) throw LinalgError(std::string(what) + ": empty matrix");
  if (!m.allFinite()) throw LinalgError(std::string(what) + ": non-finite entries");
  const double residual = max_abs(m - m.transpose());
  if (residual > kSymmetryTolerance) {
    std::ostringstream os;
    os << what << ": matrix is not symmetric (max |m - m^T| = " << residual << ")";
    throw LinalgError(os.str());
  }
}

Matrix SymEig::reconstruct() const {
  return vectors * values.asDiagonal() * vectors.transpose();
}

SymEig sym_eig(const Matrix& m) {
  require_symmetric(m, "sym_eig");
  const Eigen::Index n = m.rows();
  Matrix a = 0.5 * (m + m.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double tolerance = kOffDiagonalTolerance * a.norm();

  int sweep = 0;
  while (max_off_diagonal(a) > tolerance) {
    if (++sweep > kMaxSweeps) throw LinalgError("sym_eig: Jacobi sweeps did not converge");
    // Early sweeps only touch large entries; later sweeps rotate everything.
    const double threshold =
        sweep < 4 ? 0.2 * sum_off_diagonal(a) / static_cast<double>(n * n) : 0.0;
    for (Eigen::Index q = 1; q < n; ++q) {
      for (Eigen::Index p = 0; p < q; ++p) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        const double g = 100.0 * apq;
        if (sweep > 4 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
        } else if (apq > threshold) {
          rotate(a, v, p, q);
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  SymEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

}  // namespace sketchy
