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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sketchy/constraint.hpp"
#include "test_util.hpp"

namespace sketchy {
namespace {

// Projected gradient on ||y - x||_H^2 over the ball: a slow but unrelated
// way to reach the same minimizer when H is positive definite.
Vector oracle_projection(const Matrix& h, const Vector& y, const Vector& c, double r) {
  const double step = 0.5 / testing::oracle_max_eig(h);
  Vector x = c;
  for (int it = 0; it < 20000; ++it) {
    x -= step * 2.0 * h * (x - y);
    const double n = (x - c).norm();
    if (n > r) x = c + (x - c) * (r / n);
  }
  return x;
}

double objective(const Matrix& h, const Vector& y, const Vector& x) {
  return (y - x).dot(h * (y - x));
}

TEST(ConstraintSet, Basics) {
  const auto ball = ConstraintSet::l2_ball(2.0);
  EXPECT_TRUE(ball.is_ball());
  EXPECT_DOUBLE_EQ(ball.diameter(), 4.0);
  EXPECT_TRUE(ball.contains(Vector::Constant(2, 1.0)));
  EXPECT_FALSE(ball.contains(Vector::Constant(2, 1.5)));
  EXPECT_TRUE(std::isinf(ConstraintSet::unconstrained().diameter()));
  EXPECT_THROW(ConstraintSet::l2_ball(0.0), std::invalid_argument);
  EXPECT_THROW(ConstraintSet::l2_ball(-1.0), std::invalid_argument);
  EXPECT_THROW(ConstraintSet::l2_ball(1.0, Vector::Zero(3)).center(2), std::invalid_argument);
}

TEST(ProjectWeighted, InsideBallIsIdentity) {
  Rng rng(31);
  const Vector y = (Vector(3) << 0.1, -0.2, 0.3).finished();
  const Projection p =
      project_weighted(y, SpectralOperator::from_eig(sym_eig(testing::random_spd(rng, 3))),
                       ConstraintSet::l2_ball(1.0));
  EXPECT_EQ(p.x, y);
  EXPECT_EQ(p.nu, 0.0);
}

TEST(ProjectWeighted, UnconstrainedIsIdentity) {
  const Vector y = Vector::Constant(4, 7.0);
  EXPECT_EQ(project_weighted(y, SpectralOperator::scaled_identity(4, 1.0), ConstraintSet()).x, y);
}

TEST(ProjectWeighted, IdentityMetricIsEuclidean) {
  const Vector c = (Vector(2) << 1.0, -1.0).finished();
  const Vector y = (Vector(2) << 4.0, 3.0).finished();
  const auto k = ConstraintSet::l2_ball(2.0, c);
  const Vector want = c + 2.0 * (y - c) / (y - c).norm();
  EXPECT_LE((project_weighted(y, SpectralOperator::scaled_identity(2, 3.0), k).x - want).norm(), 1e-12);
  EXPECT_LE((project_euclidean(y, k) - want).norm(), 1e-15);
}

TEST(ProjectWeighted, DiagonalCaseBeatsBoundaryScan) {
  const Vector y = (Vector(2) << 2.0, 2.0).finished();
  const Matrix h = (Vector(2) << 4.0, 1.0).finished().asDiagonal();
  const Projection p = project_weighted(y, SpectralOperator::diagonal(Vector(h.diagonal())),
                                        ConstraintSet::l2_ball(1.0));
  EXPECT_NEAR(p.x.norm(), 1.0, 1e-12);
  EXPECT_LE(p.kkt_residual, 1e-10);
  // The minimizer lies on the boundary since y is outside; scan it finely.
  double best = std::numeric_limits<double>::infinity();
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    const Vector x = (Vector(2) << std::cos(a), std::sin(a)).finished();
    best = std::min(best, objective(h, y, x));
  }
  EXPECT_LE(objective(h, y, p.x), best + 1e-9);
  EXPECT_GE(objective(h, y, p.x), best - 1e-6);
}

TEST(ProjectWeighted, MatchesProjectedGradientOracle) {
  Rng rng(32);
  for (int c = 0; c < 20; ++c) {
    const int d = 2 + static_cast<int>(rng.below(6));
    const Matrix h = testing::random_spd(rng, d, 0.5);
    const Vector center = 0.3 * rng.normal_vector(d);
    const Vector y = center + 3.0 * rng.normal_vector(d);
    const double r = 0.5 + rng.uniform();
    const Projection p =
        project_weighted(y, SpectralOperator::from_eig(sym_eig(h)), ConstraintSet::l2_ball(r, center));
    const Vector want = oracle_projection(h, y, center, r);
    EXPECT_LE((p.x - want).norm(), 1e-7) << "case " << c;
    EXPECT_LE((p.x - center).norm(), r * (1.0 + 1e-12));
    EXPECT_LE(p.kkt_residual, 1e-10 * r);
    EXPECT_GE(p.nu, 0.0);
  }
}

TEST(ProjectWeighted, SingularMetricStaysFeasibleAndOptimal) {
  // H vanishes off the first axis, so only x_0 matters in the objective.
  Rng rng(33);
  const Matrix u = testing::unit(3, 0);
  const SpectralOperator h(u, Vector::Constant(1, 2.0), 0.0);
  const Vector y = (Vector(3) << 3.0, 4.0, 0.0).finished();
  const Projection p = project_weighted(y, h, ConstraintSet::l2_ball(1.0));
  EXPECT_LE(p.x.norm(), 1.0 + 1e-12);
  // Best reachable seminorm value: x_0 = 1.
  EXPECT_NEAR(objective(h.dense(), y, p.x), 2.0 * 4.0, 1e-9);
}

TEST(ProjectWeighted, RejectsIndefiniteMetric) {
  const SpectralOperator bad = SpectralOperator::diagonal((Vector(2) << 1.0, -1.0).finished());
  EXPECT_THROW(project_weighted(Vector::Constant(2, 5.0), bad, ConstraintSet::l2_ball(1.0)), LinalgError);
}

}  // namespace
}  // namespace sketchy
