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

#ifndef SKETCHY_SKETCH_CHECKS_HPP_
#define SKETCHY_SKETCH_CHECKS_HPP_

#include <vector>

#include "sketchy/fd_sketch.hpp"

// Dense replay checks for FD sketches. These keep the full d x d covariance
// and are meant for small d.

namespace sketchy {

/// Discounted covariance sum_t beta2^(T-t) g_t g_t^T.
Matrix weighted_covariance(const std::vector<Vector>& grads, double beta2);

/// min over k < l of (sum_{i>k} lambda_i(G)) / (l - k) for the discounted
/// covariance G of the stream.
double escaped_mass_bound(const std::vector<Vector>& grads, int sketch_size, double beta2);

/// Same bound from a precomputed covariance.
double escaped_mass_bound(const Matrix& covariance, int sketch_size);

struct SandwichReport {
  int steps = 0;
  double min_lower_gap = 0.0;       // min_t lambda_min(G_t - Gbar_t)
  double min_upper_gap = 0.0;       // min_t lambda_min(Gtilde_t - G_t)
  double max_identity_residual = 0.0;  // relative to 1 + ||G_t||_max
  double min_monotone_gap = 0.0;    // min_t lambda_min(Gtilde_t - Gtilde_{t-1})
  double max_projector_residual = 0.0;  // max ||N^2 - N||_max

  static constexpr double kOrderSlack = 1e-8;
  static constexpr double kIdentityTolerance = 1e-7;
  bool passed() const;
};

/// Replays a rank-one stream with beta2 = 1, tracking the dense covariance
/// alongside the sketch and the deflation records.
SandwichReport sandwich_check(const std::vector<Vector>& grads, int sketch_size,
                              FdMethod method = FdMethod::kFactored);

struct EwfdReport {
  int steps = 0;
  double max_error_excess = 0.0;  // max_t ||Gbar_t - G_t||_2 - rho_{1:t}
  double max_bound_excess = 0.0;  // max_t rho_{1:t} - bound_t
  double final_error = 0.0;
  double final_rho = 0.0;
  double final_bound = 0.0;

  static constexpr double kSlack = 1e-8;
  bool passed() const;
};

EwfdReport ewfd_error_check(const std::vector<Vector>& grads, int sketch_size, double beta2,
                            FdMethod method = FdMethod::kFactored);

}  // namespace sketchy

#endif  // SKETCHY_SKETCH_CHECKS_HPP_
