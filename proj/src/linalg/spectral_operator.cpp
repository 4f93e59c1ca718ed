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

#include "sketchy/spectral_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace sketchy {

SpectralOperator::SpectralOperator(Matrix basis, Vector values, double complement)
    : basis_(std::move(basis)), values_(std::move(values)), complement_(complement) {
  if (basis_.cols() != values_.size())
    throw LinalgError("SpectralOperator: basis/eigenvalue count mismatch");
  if (basis_.cols() > basis_.rows())
    throw LinalgError("SpectralOperator: more basis vectors than dimensions");
  if (!values_.allFinite() || !std::isfinite(complement_))
    throw LinalgError("SpectralOperator: non-finite eigenvalue");
}

SpectralOperator SpectralOperator::from_eig(const SymEig& e) {
  return SpectralOperator(e.vectors, e.values, 0.0);
}

SpectralOperator SpectralOperator::diagonal(const Vector& diag) {
  return SpectralOperator(Matrix::Identity(diag.size(), diag.size()), diag, 0.0);
}

SpectralOperator SpectralOperator::scaled_identity(int dim, double c) {
  return SpectralOperator(Matrix(dim, 0), Vector(0), c);
}

double SpectralOperator::max_eigenvalue() const {
  double m = has_complement() ? complement_ : -std::numeric_limits<double>::infinity();
  if (values_.size()) m = std::max(m, values_.maxCoeff());
  return m;
}

double SpectralOperator::min_eigenvalue() const {
  double m = has_complement() ? complement_ : std::numeric_limits<double>::infinity();
  if (values_.size()) m = std::min(m, values_.minCoeff());
  return m;
}

SpectralOperator SpectralOperator::power(double p, bool pseudo) const {
  const double lambda_max = std::max(max_eigenvalue(), 0.0);
  const double cutoff = kRankTolerance * lambda_max;
  auto raise = [&](double lambda) {
    if (lambda < 0.0) {
      if (lambda < -kRankTolerance * lambda_max)
        throw LinalgError("SpectralOperator::power: negative eigenvalue");
      lambda = 0.0;
    }
    if (p > 0.0) return std::pow(lambda, p);
    if (lambda <= cutoff && pseudo) return 0.0;
    if (lambda == 0.0) throw LinalgError("SpectralOperator::power: singular operator");
    return std::pow(lambda, p);
  };
  Vector powered(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) powered(i) = raise(values_(i));
  const double c = has_complement() ? raise(complement_) : 0.0;
  return SpectralOperator(basis_, std::move(powered), c);
}

SpectralOperator SpectralOperator::shifted(double c) const {
  return SpectralOperator(basis_, values_.array() + c, complement_ + c);
}

void SpectralOperator::split(const Vector& x, Vector* coords, Vector* residual) const {
  *coords = basis_.transpose() * x;
  if (residual) *residual = x - basis_ * (*coords);
}

Vector SpectralOperator::apply(const Vector& x) const {
  if (x.size() != basis_.rows()) throw LinalgError("SpectralOperator::apply: dimension mismatch");
  const Vector coords = basis_.transpose() * x;
  Vector out = basis_ * (values_.cwiseProduct(coords) - complement_ * coords);
  if (complement_ != 0.0) out += complement_ * x;
  return out;
}

Matrix SpectralOperator::apply(const Matrix& x) const {
  if (x.rows() != basis_.rows()) throw LinalgError("SpectralOperator::apply: dimension mismatch");
  const Matrix coords = basis_.transpose() * x;
  Matrix out = basis_ * ((values_.array() - complement_).matrix().asDiagonal() * coords);
  if (complement_ != 0.0) out += complement_ * x;
  return out;
}

Matrix SpectralOperator::dense() const {
  Matrix out = basis_ * (values_.array() - complement_).matrix().asDiagonal() * basis_.transpose();
  out.diagonal().array() += complement_;
  return out;
}

}  // namespace sketchy
