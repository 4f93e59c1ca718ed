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

#ifndef SKETCHY_SPECTRAL_MC_HPP_
#define SKETCHY_SPECTRAL_MC_HPP_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "sketchy/linalg.hpp"

namespace sketchy {

struct MonteCarloOptions {
  int outer_dim = 1024;  // rows of each x_i
  int inner_dim = 1;     // columns of each x_i
  int terms = 10000;     // n
  double beta2 = 0.999;
  int trials = 5;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct MonteCarloResult {
  std::vector<double> values;  // one per trial
  double mean = 0.0;
  double stderr_mean = 0.0;  // sample std / sqrt(trials); 0 for one trial

  nlohmann::json to_json(const MonteCarloOptions& o) const;
};

/// Intrinsic dimension of sum_{i<n} beta2^i x_i x_i^T for Gaussian
/// outer_dim x inner_dim matrices x_i.
double intrinsic_dimension_trial(const MonteCarloOptions& o, std::uint64_t trial);
MonteCarloResult intrinsic_dim_montecarlo(const MonteCarloOptions& o);

}  // namespace sketchy

#endif  // SKETCHY_SPECTRAL_MC_HPP_
