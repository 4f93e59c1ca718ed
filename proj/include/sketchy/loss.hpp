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

#ifndef SKETCHY_LOSS_HPP_
#define SKETCHY_LOSS_HPP_

#include <variant>
#include <vector>

#include "sketchy/dataset.hpp"
#include "sketchy/linalg.hpp"

namespace sketchy {

/// f(x) = <x, g>.
struct LinearLoss {
  Vector g;
};

/// f(x) = log(1 + exp(-y <a, x>)) for a sparse feature vector a (intercept
/// included as an explicit entry).
struct LogisticLoss {
  std::vector<int> index;
  std::vector<double> value;
  double label = 1.0;
  int dim = 0;

  double margin(const Vector& x) const;
};

using LossEvent = std::variant<LinearLoss, LogisticLoss>;

int loss_dim(const LossEvent& e);
double loss_value(const LossEvent& e, const Vector& x);
Vector loss_gradient(const LossEvent& e, const Vector& x);
/// Value and gradient in one pass.
double loss_value_and_gradient(const LossEvent& e, const Vector& x, Vector* grad);

/// log(1 + exp(z)) without overflow.
double softplus(double z);
/// 1 / (1 + exp(-z)) without overflow.
double sigmoid(double z);

LogisticLoss logistic_event(const Dataset& ds, std::size_t i);
std::vector<LossEvent> logistic_events(const Dataset& ds);
std::vector<LossEvent> linear_events(const std::vector<Vector>& grads);

}  // namespace sketchy

#endif  // SKETCHY_LOSS_HPP_
