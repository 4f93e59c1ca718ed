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

#ifndef SKETCHY_REDUCTION_HPP_
#define SKETCHY_REDUCTION_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "sketchy/optimizer_config.hpp"

namespace sketchy {

/// Smooth objective with an exact gradient oracle; noise is added by the
/// reduction.
struct SmoothObjective {
  int dim = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

struct ReductionOptions {
  int episodes = 10;       // T
  int inner_rounds = 100;  // N
  double smoothness = 1.0;  // L
  double noise = 0.0;       // std of Gaussian noise on each gradient
  std::uint64_t seed = 0;
  /// Inner online learner. It runs in coordinates centered at the episode
  /// anchor x_t, so a ball constraint is a trust region around x_t.
  OptimizerConfig inner;
  Vector start;  // x_1; zero if empty
};

struct ReductionResult {
  std::vector<Vector> anchors;       // x_1 ... x_{T+1}
  std::vector<double> gradient_norms;  // ||grad f(x_t)||
  int best = 0;                      // argmin index into anchors
  Vector point() const { return anchors[static_cast<std::size_t>(best)]; }
  double best_gradient_norm() const { return gradient_norms[static_cast<std::size_t>(best)]; }
};

/// Episode t runs the inner learner for N rounds on
/// f_t(x) = f(x) + L ||x - x_t||^2 with noisy gradients, sets x_{t+1} to the
/// mean of the points it played, and finally returns the anchor with the
/// smallest true gradient norm.
ReductionResult nonconvex_reduce(const SmoothObjective& f, const ReductionOptions& options);

}  // namespace sketchy

#endif  // SKETCHY_REDUCTION_HPP_
