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

#ifndef SKETCHY_SYNTHETIC_HPP_
#define SKETCHY_SYNTHETIC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sketchy/dataset.hpp"
#include "sketchy/rng.hpp"

namespace sketchy {

/// "logistic:n=500,d=20,seed=1" (keys optional, any order). d counts
/// features without the intercept.
struct SyntheticSpec {
  std::string kind = "logistic";
  int n = 500;
  int d = 20;
  std::uint64_t seed = 1;

  static SyntheticSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Standard Gaussian features, labels from a planted linear model
/// (weights N(0, 9/d)) with logistic label noise. At this scale the tuned
/// step sizes land inside the default grid rather than at eta = 1.
Dataset synthetic_logistic(const SyntheticSpec& spec);

/// d x r matrix with orthonormal columns from a seeded Gaussian matrix.
Matrix orthonormal_columns(int d, int r, Rng& rng);

std::vector<Vector> gaussian_stream(int d, int rounds, Rng& rng);
/// Gradients confined to a random rank-r subspace.
std::vector<Vector> low_rank_stream(int d, int rank, int rounds, Rng& rng);

}  // namespace sketchy

#endif  // SKETCHY_SYNTHETIC_HPP_
