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
#include <sstream>

#include "sketchy/harness.hpp"
#include "sketchy/loss.hpp"
#include "sketchy/optimizer.hpp"
#include "sketchy/synthetic.hpp"
#include "test_util.hpp"

namespace sketchy {
namespace {

long double ref_softplus(long double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

TEST(Loss, SoftplusAndSigmoidAgainstLongDouble) {
  for (double z : {-800.0, -40.0, -3.0, -1e-9, 0.0, 2.5, 30.0, 800.0}) {
    const double want = static_cast<double>(ref_softplus(z));
    EXPECT_NEAR(softplus(z), want, 1e-15 * (1.0 + std::abs(want))) << z;
    const double s = static_cast<double>(1.0L / (1.0L + std::exp(-static_cast<long double>(z))));
    EXPECT_NEAR(sigmoid(z), s, 1e-16 + 1e-15 * s) << z;
  }
  EXPECT_TRUE(std::isfinite(softplus(1e6)));
}

TEST(Loss, LogisticGradientMatchesFiniteDifferences) {
  const Dataset ds = synthetic_logistic(SyntheticSpec::parse("logistic:n=20,d=6,seed=4"));
  Rng rng(51);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const LossEvent e = logistic_event(ds, i);
    const Vector x = rng.normal_vector(ds.dim);
    Vector g;
    const double f = loss_value_and_gradient(e, x, &g);
    EXPECT_DOUBLE_EQ(f, loss_value(e, x));
    EXPECT_EQ(g, loss_gradient(e, x));
    const double h = 1e-6;
    for (int j = 0; j < ds.dim; ++j) {
      Vector xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      const double fd = (loss_value(e, xp) - loss_value(e, xm)) / (2 * h);
      EXPECT_NEAR(g(j), fd, 1e-7) << "example " << i << " coord " << j;
    }
  }
}

TEST(Loss, LogisticValueByHand) {
  const Dataset ds = synthetic_logistic(SyntheticSpec::parse("logistic:n=3,d=2,seed=1"));
  const LogisticLoss e = logistic_event(ds, 0);
  const Vector x = Vector::Constant(ds.dim, 0.3);
  const double m = e.label * ds.dense(0).dot(x);
  EXPECT_NEAR(e.margin(x), m, 1e-15);
  EXPECT_NEAR(loss_value(e, x), std::log1p(std::exp(-m)), 1e-15);
  EXPECT_EQ(loss_dim(e), ds.dim);
}

TEST(Loss, Linear) {
  const LossEvent e = LinearLoss{(Vector(2) << 1.0, -2.0).finished()};
  EXPECT_EQ(loss_value(e, (Vector(2) << 3.0, 1.0).finished()), 1.0);
  EXPECT_EQ(loss_gradient(e, Vector::Zero(2)), std::get<LinearLoss>(e).g);
}

TEST(Harness, ZeroLossesGiveZeroRegret) {
  SketchyAdaGrad opt(3, 2, 1.0);
  const auto events = linear_events(std::vector<Vector>(10, Vector::Zero(3)));
  const RegretTrace tr = run_stream(opt, events, Vector::Ones(3));
  EXPECT_EQ(tr.rounds(), 10u);
  EXPECT_EQ(tr.final_regret(), 0.0);
  EXPECT_EQ(opt.iterate(), Vector::Zero(3));
}

TEST(Harness, SingleLinearLossRegret) {
  const double d = 2.0;
  const Vector g = (Vector(2) << 3.0, 4.0).finished();
  Ogd opt(2, 1.0, ConstraintSet::l2_ball(d / 2));
  const Vector comparator = -(d / 2) * g / g.norm();
  const RegretTrace tr = run_stream(opt, linear_events({g}), comparator);
  EXPECT_NEAR(tr.final_regret(), (d / 2) * g.norm(), 1e-12);
  EXPECT_EQ(tr.average_loss(), 0.0);
}

TEST(Harness, TraceBookkeeping) {
  Rng rng(52);
  const auto grads = testing::gaussian_vectors(rng, 4, 25);
  SketchyAdaGrad opt(4, 2, 0.5);
  const RegretTrace tr = run_stream(opt, linear_events(grads), Vector::Zero(4));
  // Replay by hand: cumulative loss of the played points.
  SketchyAdaGrad again(4, 2, 0.5);
  double cum = 0.0;
  for (std::size_t t = 0; t < grads.size(); ++t) {
    cum += grads[t].dot(again.iterate());
    again.step(grads[t]);
    EXPECT_NEAR(tr.cum_loss[t], cum, 1e-12 * (1.0 + std::abs(cum)));
    EXPECT_EQ(tr.cum_comparator_loss[t], 0.0);
  }
  EXPECT_EQ(tr.rho_cum.back(), opt.escaped_mass());
  EXPECT_EQ(tr.peak_state_scalars(), opt.state_scalars());
  EXPECT_NEAR(tr.average_loss(), cum / 25.0, 1e-12);
  EXPECT_EQ(tr.regret_series().size(), 25u);

  std::ostringstream csv;
  tr.write_csv(csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "round,cum_loss,cum_comparator_loss,regret,rho_cum,state_scalars");
  int rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  EXPECT_EQ(rows, 25);
}

TEST(Harness, DimensionMismatchIsReported) {
  SketchyAdaGrad opt(3, 2, 1.0);
  EXPECT_THROW(run_stream(opt, linear_events({Vector::Ones(4)}), Vector::Zero(3)), RunError);
}

}  // namespace
}  // namespace sketchy
