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

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "sketchy/optimizer.hpp"

namespace sketchy {

void OnlineOptimizer::begin_step(const Vector& g, Eigen::Index dim) {
  if (g.size() != dim) {
    std::ostringstream os;
    os << name() << ": gradient has length " << g.size() << ", expected " << dim;
    throw std::invalid_argument(os.str());
  }
  if (!g.allFinite()) throw std::invalid_argument(name() + ": non-finite gradient");
  ++rounds_;
}

SketchyAdaGrad::SketchyAdaGrad(int dim, int sketch_size, double eta, ConstraintSet k,
                               double beta2, FdMethod method)
    : sketch_(dim, sketch_size, beta2, method), eta_(eta), k_(std::move(k)) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("s_adagrad: eta must be positive");
  x_ = k_.is_ball() ? k_.center(dim) : Vector::Zero(dim);
}

double SketchyAdaGrad::default_eta(const ConstraintSet& k) {
  if (!k.is_ball()) throw std::invalid_argument("s_adagrad: default eta needs a bounded constraint set");
  return k.diameter() / std::sqrt(2.0);
}

void SketchyAdaGrad::set_iterate(const Vector& x) {
  if (x.size() != x_.size()) throw std::invalid_argument("s_adagrad: iterate has the wrong dimension");
  x_ = x;
}

void SketchyAdaGrad::step(const Vector& g) {
  begin_step(g, x_.size());
  if ((g.array() == 0.0).all()) return;
  sketch_.update(g);
  const SpectralOperator tilde = sketch_.compensated();
  // rho_{1:t} = 0 leaves Gtilde singular; g lies in its range, so the
  // pseudo-inverse root is the right map.
  Vector y = x_ - eta_ * tilde.power(-0.5, true).apply(g);
  if (k_.is_ball()) {
    Projection p = project_weighted(y, tilde.power(0.5, true), k_);
    last_kkt_ = p.kkt_residual;
    x_ = std::move(p.x);
  } else {
    x_ = std::move(y);
  }
}

std::size_t SketchyAdaGrad::state_scalars() const {
  return sketch_.state_scalars() + static_cast<std::size_t>(x_.size());
}

}  // namespace sketchy
