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

#include <cmath>

#include "sketchy/linalg.hpp"

namespace sketchy {

double top_eigenvalue(const Matrix& m) {
  require_symmetric(m, "top_eigenvalue");
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);

  // Deterministic start vector with no special alignment to coordinate axes.
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * std::sin(1.0 + 3.0 * static_cast<double>(i));
  v.normalize();

  Matrix basis(n, std::min<Eigen::Index>(n, 64));
  Vector alpha(basis.cols());
  Vector beta(basis.cols());
  const double scale = m.norm();
  double estimate = 0.0;

  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == basis.cols()) {
      const Eigen::Index grown = std::min<Eigen::Index>(n, 2 * basis.cols());
      basis.conservativeResize(Eigen::NoChange, grown);
      alpha.conservativeResize(grown);
      beta.conservativeResize(grown);
    }
    basis.col(k) = v;
    Vector w = m * v;
    alpha(k) = v.dot(w);
    // Two passes of classical Gram-Schmidt keep the basis orthonormal.
    for (int pass = 0; pass < 2; ++pass) {
      const Vector coeffs = basis.leftCols(k + 1).transpose() * w;
      w.noalias() -= basis.leftCols(k + 1) * coeffs;
    }
    beta(k) = w.norm();

    const bool exhausted = beta(k) <= 1e-14 * scale || k + 1 == n;
    if (exhausted || (k + 1) % 8 == 0) {
      Matrix t = Matrix::Zero(k + 1, k + 1);
      for (Eigen::Index i = 0; i <= k; ++i) {
        t(i, i) = alpha(i);
        if (i > 0) t(i, i - 1) = t(i - 1, i) = beta(i - 1);
      }
      const SymEig ritz = sym_eig(t);
      estimate = ritz.values(0);
      const double residual = beta(k) * std::abs(ritz.vectors(k, 0));
      if (exhausted || residual <= 1e-13 * std::max(std::abs(estimate), scale * 1e-300)) {
        return estimate;
      }
    }
    v = w / beta(k);
  }
  return estimate;
}

}  // namespace sketchy
