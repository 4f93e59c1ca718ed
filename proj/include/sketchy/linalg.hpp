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

#ifndef SKETCHY_LINALG_HPP_
#define SKETCHY_LINALG_HPP_

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace sketchy {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised when an input violates a numerical precondition (asymmetry,
/// indefiniteness, singularity, non-finite entries, shape mismatch).
class LinalgError : public std::domain_error {
 public:
  explicit LinalgError(const std::string& what) : std::domain_error(what) {}
};

/// Relative cutoff below which eigenvalues count as zero for rank decisions
/// and pseudo-inverse powers.
inline constexpr double kRankTolerance = 1e-10;

/// Absolute tolerance on |m - m^T| accepted as "symmetric".
inline constexpr double kSymmetryTolerance = 1e-10;

/// Eigendecomposition of a symmetric matrix. `values` are sorted descending
/// and column i of `vectors` is the unit eigenvector for values(i).
struct SymEig {
  Vector values;
  Matrix vectors;

  int dim() const { return static_cast<int>(values.size()); }
  double max_value() const { return values.size() ? values(0) : 0.0; }
  Matrix reconstruct() const;
};

/// Cyclic Jacobi with threshold sweeps. Stops once the largest off-diagonal
/// entry is at most 1e-12 * ||m||_F. Deterministic for a fixed input; equal
/// eigenvalues keep the order in which the sweeps left them.
SymEig sym_eig(const Matrix& m);

/// Returns Q diag(lambda^p) Q^T for p in {-1, -1/2, -1/4, 1/4, 1/2}.
/// Eigenvalues in [-1e-10 * lambda_max, 0) are clamped to zero; anything more
/// negative is rejected. With `pseudo`, eigenvalues at or below
/// kRankTolerance * lambda_max map to zero instead of diverging.
Matrix psd_power(const SymEig& e, double p, bool pseudo);

/// Solves sqrt(X) S + S sqrt(X) = delta in the eigenbasis of X.
/// X must be strictly positive definite (lambda_min > 1e-12 lambda_max).
Matrix lyapunov_solve(const Matrix& x, const Matrix& delta);

/// Step-skipping error term tr(G^{-1/2} S G^{-1/2} A) where S solves the
/// Lyapunov equation sqrt(G) S + S sqrt(G) = A.
double epoch_error_term(const Matrix& g, const Matrix& a);

/// tr(m) / lambda_max(m) for a PSD matrix with lambda_max > 0.
double intrinsic_dimension(const Matrix& m);

/// Largest eigenvalue of a symmetric matrix via Lanczos with full
/// reorthogonalization; used where a full Jacobi solve would be wasteful.
double top_eigenvalue(const Matrix& m);

/// Max-abs entry, 0 for an empty matrix.
double max_abs(const Matrix& m);

/// Throws LinalgError unless m is square, finite and symmetric within
/// kSymmetryTolerance.
void require_symmetric(const Matrix& m, const char* what);

}  // namespace sketchy

#endif  // SKETCHY_LINALG_HPP_
