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

#include "sketchy/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace sketchy {

double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LogisticLoss::margin(const Vector& x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < index.size(); ++k) s += value[k] * x(index[k]);
  return label * s;
}

int loss_dim(const LossEvent& e) {
  if (const auto* lin = std::get_if<LinearLoss>(&e)) return static_cast<int>(lin->g.size());
  return std::get<LogisticLoss>(e).dim;
}

double loss_value(const LossEvent& e, const Vector& x) {
  if (x.size() != loss_dim(e)) throw std::invalid_argument("loss: dimension mismatch");
  if (const auto* lin = std::get_if<LinearLoss>(&e)) return lin->g.dot(x);
  return softplus(-std::get<LogisticLoss>(e).margin(x));
}

double loss_value_and_gradient(const LossEvent& e, const Vector& x, Vector* grad) {
  if (x.size() != loss_dim(e)) throw std::invalid_argument("loss: dimension mismatch");
  if (const auto* lin = std::get_if<LinearLoss>(&e)) {
    *grad = lin->g;
    return lin->g.dot(x);
  }
  const auto& lg = std::get<LogisticLoss>(e);
  const double m = lg.margin(x);
  // d/dx log(1 + exp(-m)) = -sigmoid(-m) * y * a.
  const double coef = -lg.label * sigmoid(-m);
  grad->setZero(lg.dim);
  for (std::size_t k = 0; k < lg.index.size(); ++k) (*grad)(lg.index[k]) += coef * lg.value[k];
  return softplus(-m);
}

Vector loss_gradient(const LossEvent& e, const Vector& x) {
  Vector g;
  loss_value_and_gradient(e, x, &g);
  return g;
}

LogisticLoss logistic_event(const Dataset& ds, std::size_t i) {
  const Example& ex = ds.examples.at(i);
  LogisticLoss l;
  l.index = ex.index;
  l.value = ex.value;
  l.index.push_back(ds.dim - 1);
  l.value.push_back(1.0);
  l.label = ex.label;
  l.dim = ds.dim;
  return l;
}

std::vector<LossEvent> logistic_events(const Dataset& ds) {
  std::vector<LossEvent> out;
  out.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) out.emplace_back(logistic_event(ds, i));
  return out;
}

std::vector<LossEvent> linear_events(const std::vector<Vector>& grads) {
  std::vector<LossEvent> out;
  out.reserve(grads.size());
  for (const Vector& g : grads) out.emplace_back(LinearLoss{g});
  return out;
}

}  // namespace sketchy
