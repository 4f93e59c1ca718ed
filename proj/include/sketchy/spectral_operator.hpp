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

#ifndef SKETCHY_SPECTRAL_OPERATOR_HPP_
#define SKETCHY_SPECTRAL_OPERATOR_HPP_

#include "sketchy/linalg.hpp"

namespace sketchy {

/// A PSD operator stored by its spectrum: eigenvalues `values` on the
/// orthonormal columns of `basis`, and the single eigenvalue `complement` on
/// the orthogonal complement of span(basis).
///
///   H = U diag(values) U^T + complement * (I - U U^T)
///
/// This is the shape of every preconditioner built from a sketch (low rank
/// plus a ridge) and also covers dense eigendecompositions (k = d). Applying
/// it costs O(d k) and never forms a d x d matrix.
class SpectralOperator {
 public:
  SpectralOperator() = default;
  SpectralOperator(Matrix basis, Vector values, double complement);

  static SpectralOperator from_eig(const SymEig& e);
  /// Diagonal operator (basis is implicit identity, stored explicitly).
  static SpectralOperator diagonal(const Vector& diag);
  /// c * I in dimension d.
  static SpectralOperator scaled_identity(int dim, double c);

  int dim() const { return static_cast<int>(basis_.rows()); }
  int rank_part() const { return static_cast<int>(basis_.cols()); }
  bool has_complement() const { return basis_.cols() < basis_.rows(); }

  const Matrix& basis() const { return basis_; }
  const Vector& values() const { return values_; }
  double complement() const { return complement_; }

  double max_eigenvalue() const;
  double min_eigenvalue() const;

  /// Same eigenbasis, every eigenvalue raised to p. Negative p with `pseudo`
  /// sends eigenvalues at or below kRankTolerance * lambda_max to zero.
  SpectralOperator power(double p, bool pseudo) const;

  /// Adds c to every eigenvalue (H + c I).
  SpectralOperator shifted(double c) const;

  Vector apply(const Vector& x) const;
  /// Applies the operator to each column of x.
  Matrix apply(const Matrix& x) const;

  /// Coordinates of x in the basis and the residual outside span(basis).
  void split(const Vector& x, Vector* coords, Vector* residual) const;

  Matrix dense() const;

 private:
  Matrix basis_;
  Vector values_;
  double complement_ = 0.0;
};

}  // namespace sketchy

#endif  // SKETCHY_SPECTRAL_OPERATOR_HPP_
