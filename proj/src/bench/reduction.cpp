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

#include "sketchy/reduction.hpp"

#include <stdexcept>

#include "sketchy/rng.hpp"

namespace sketchy {

ReductionResult nonconvex_reduce(const SmoothObjective& f, const ReductionOptions& o) {
  if (o.episodes < 1 || o.inner_rounds < 1) throw std::invalid_argument("reduction: T and N must be positive");
  if (!(o.smoothness > 0.0)) throw std::invalid_argument("reduction: L must be positive");
  if (!(o.noise >= 0.0)) throw std::invalid_argument("reduction: noise must be nonnegative");
  const int d = f.dim;
  Rng rng = Rng(o.seed).split(7);

  ReductionResult r;
  Vector x = o.start.size() ? o.start : Vector::Zero(d);
  if (x.size() != d) throw std::invalid_argument("reduction: start point has the wrong dimension");
  r.anchors.push_back(x);
  r.gradient_norms.push_back(f.gradient(x).norm());
  for (int t = 0; t < o.episodes; ++t) {
    auto inner = make_optimizer(o.inner, d);
    Vector sum = Vector::Zero(d);
    for (int s = 0; s < o.inner_rounds; ++s) {
      const Vector z = inner->iterate();
      sum += z;
      const Vector point = x + z;
      Vector g = f.gradient(point) + 2.0 * o.smoothness * z;
      if (o.noise > 0.0) g += o.noise * rng.normal_vector(d);
      inner->step(g);
    }
    x = x + sum / static_cast<double>(o.inner_rounds);
    r.anchors.push_back(x);
    r.gradient_norms.push_back(f.gradient(x).norm());
  }
  for (std::size_t i = 1; i < r.gradient_norms.size(); ++i)
    if (r.gradient_norms[i] < r.gradient_norms[static_cast<std::size_t>(r.best)]) r.best = static_cast<int>(i);
  return r;
}

}  // namespace sketchy
