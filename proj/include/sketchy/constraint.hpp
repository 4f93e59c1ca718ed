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

#ifndef SKETCHY_CONSTRAINT_HPP_
#define SKETCHY_CONSTRAINT_HPP_

#include <string>

#include "sketchy/linalg.hpp"
#include "sketchy/spectral_operator.hpp"

namespace sketchy {

/// Feasible set for an iterate. Matrix iterates are handled in vectorized
/// form, so a Frobenius ball is an L2 ball on vec(X).
class ConstraintSet {
 public:
  enum class Kind { kUnconstrained, kL2Ball, kFrobeniusBall };

  static ConstraintSet unconstrained() { return ConstraintSet(); }
  /// ||x - center|| <= radius. An empty center means the origin.
  static ConstraintSet l2_ball(double radius, Vector center = Vector());
  static ConstraintSet frobenius_ball(double radius);

  Kind kind() const { return kind_; }
  bool is_ball() const { return kind_ != Kind::kUnconstrained; }
  double radius() const { return radius_; }
  /// Center in dimension d (the origin if none was given).
  Vector center(int dim) const;
  /// 2r for a ball, +inf otherwise.
  double diameter() const;
  bool contains(const Vector& x, double tol = 1e-8) const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::kUnconstrained;
  double radius_ = 0.0;
  Vector center_;
};

struct Projection {
  Vector x;
  double nu = 0.0;            // multiplier of the ball constraint
  double kkt_residual = 0.0;  // in units of length; compare against r
};

/// argmin_{x in K} ||y - x||_H^2 for a PSD H given in spectral form.
///
/// Directions where H vanishes do not enter the objective. They keep their
/// value from y when the range part leaves room for them inside the ball and
/// are shrunk toward the center otherwise, which still gives a minimizer of
/// the seminorm problem.
Projection project_weighted(const Vector& y, const SpectralOperator& h, const ConstraintSet& k);

/// Plain Euclidean projection.
Vector project_euclidean(const Vector& y, const ConstraintSet& k);

}  // namespace sketchy

#endif  // SKETCHY_CONSTRAINT_HPP_
