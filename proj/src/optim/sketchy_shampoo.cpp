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
#include <stdexcept>

#include "sketchy/optimizer.hpp"

namespace sketchy {

SketchyShampoo::SketchyShampoo(int rows, int cols, int left_sketch, int right_sketch, double eta,
                               double epsilon, double beta2, FdMethod method)
    : rows_(rows),
      cols_(cols),
      left_(rows, left_sketch, beta2, method),
      right_(cols, right_sketch, beta2, method),
      eta_(eta),
      epsilon_(epsilon) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("s_shampoo: eta must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("s_shampoo: epsilon must be positive");
  x_ = Vector::Zero(static_cast<Eigen::Index>(rows) * cols);
}

double SketchyShampoo::default_eta(double diameter, int rows, int cols) {
  if (!(diameter > 0.0) || !std::isfinite(diameter))
    throw std::invalid_argument("s_shampoo: default eta needs a finite diameter");
  return diameter / std::sqrt(2.0 * std::min(rows, cols));
}

Matrix SketchyShampoo::iterate_matrix() const {
  return Eigen::Map<const Matrix>(x_.data(), rows_, cols_);
}

void SketchyShampoo::step(const Vector& g) {
  if (g.size() != x_.size()) throw std::invalid_argument("s_shampoo: gradient has the wrong length");
  step(Matrix(Eigen::Map<const Matrix>(g.data(), rows_, cols_)));
}

void SketchyShampoo::step(const Matrix& g) {
  if (g.rows() != rows_ || g.cols() != cols_)
    throw std::invalid_argument("s_shampoo: gradient has the wrong shape");
  if (!g.allFinite()) throw std::invalid_argument("s_shampoo: non-finite gradient");
  ++rounds_;
  if ((g.array() == 0.0).all()) return;
  // G G^T = G * G^T, so G itself is the factor of the left update.
  left_.update_factor(g);
  right_.update_factor(g.transpose());
  const Matrix left_root = left_preconditioner().power(-0.25, false).apply(g);
  const Matrix step = right_preconditioner().power(-0.25, false).apply(Matrix(left_root.transpose()));
  Eigen::Map<Matrix>(x_.data(), rows_, cols_) -= eta_ * step.transpose();
}

std::size_t SketchyShampoo::state_scalars() const {
  return left_.state_scalars() + right_.state_scalars() + static_cast<std::size_t>(x_.size()) + 1;
}

}  // namespace sketchy
