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
#include <sstream>

#include "sketchy/linalg.hpp"

namespace sketchy {
namespace {

constexpr double kClampTolerance = 1e-10;
constexpr double kDefiniteTolerance = 1e-12;

bool supported_exponent(double p) {
  for (double allowed : {-1.0, -0.5, -0.25, 0.25, 0.5})
    if (p == allowed) return true;
  return false;
}

double clamp_eigenvalue(double lambda, double lambda_max) {
  if (lambda >= 0.0) return lambda;
  if (lambda >= -kClampTolerance * lambda_max) return 0.0;
  std::ostringstream os;
  os << "psd_power: eigenvalue " << lambda << " is negative beyond tolerance (lambda_max = "
     << lambda_max << ")";
  throw LinalgError(os.str());
}

// Eigendecomposition of a matrix that must be strictly positive definite.
SymEig positive_definite_eig(const Matrix& x, const char* what) {
  SymEig e = sym_eig(x);
  const double lambda_max = e.max_value();
  const double lambda_min = e.values(e.dim() - 1);
  if (!(lambda_max > 0.0) || lambda_min <= kDefiniteTolerance * lambda_max) {
    std::ostringstream os;
    os << what << ": matrix is not strictly positive definite (lambda_min = " << lambda_min
       << ", lambda_max = " << lambda_max << ")";
    throw LinalgError(os.str());
  }
  return e;
}

}  // namespace

Matrix psd_power(const SymEig& e, double p, bool pseudo) {
  if (!supported_exponent(p)) {
    std::ostringstream os;
    os << "psd_power: unsupported exponent " << p;
    throw LinalgError(os.str());
  }
  const double lambda_max = std::max(e.max_value(), 0.0);
  const double cutoff = kRankTolerance * lambda_max;
  Vector powered(e.dim());
  for (int i = 0; i < e.dim(); ++i) {
    const double lambda = clamp_eigenvalue(e.values(i), lambda_max);
    if (p > 0.0) {
      powered(i) = std::pow(lambda, p);
    } else if (lambda <= cutoff && pseudo) {
      powered(i) = 0.0;
    } else if (lambda == 0.0) {
      throw LinalgError("psd_power: singular matrix raised to a negative power");
    } else {
      powered(i) = std::pow(lambda, p);
    }
  }
  return e.vectors * powered.asDiagonal() * e.vectors.transpose();
}

Matrix lyapunov_solve(const Matrix& x, const Matrix& delta) {
  require_symmetric(delta, "lyapunov_solve");
  if (delta.rows() != x.rows()) throw LinalgError("lyapunov_solve: dimension mismatch");
  const SymEig e = positive_definite_eig(x, "lyapunov_solve");
  const Vector root = e.values.cwiseSqrt();
  Matrix rotated = e.vectors.transpose() * delta * e.vectors;
  for (Eigen::Index j = 0; j < rotated.cols(); ++j)
    for (Eigen::Index i = 0; i < rotated.rows(); ++i) rotated(i, j) /= root(i) + root(j);
  return e.vectors * rotated * e.vectors.transpose();
}

double epoch_error_term(const Matrix& g, const Matrix& a) {
  const SymEig e = positive_definite_eig(g, "epoch_error_term");
  const Matrix s = lyapunov_solve(g, a);
  const Matrix inv_root = psd_power(e, -0.5, false);
  return (inv_root * s * inv_root * a).trace();
}

double intrinsic_dimension(const Matrix& m) {
  require_symmetric(m, "intrinsic_dimension");
  // Jacobi is cheap at small sizes; large covariances only need lambda_max.
  const double lambda_max = m.rows() <= 64 ? sym_eig(m).max_value() : top_eigenvalue(m);
  if (!(lambda_max > 0.0)) throw LinalgError("intrinsic_dimension: matrix has no positive eigenvalue");
  return m.trace() / lambda_max;
}

}  // namespace sketchy
