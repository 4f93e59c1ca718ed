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

#ifndef SKETCHY_COMPARATOR_HPP_
#define SKETCHY_COMPARATOR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "sketchy/constraint.hpp"
#include "sketchy/loss.hpp"

namespace sketchy {

struct ComparatorResult {
  Vector x;
  double objective = 0.0;       // sum_t f_t(x)
  double gradient_norm = 0.0;   // of the mean loss (gradient mapping on a ball)
  double suboptimality_bound = 0.0;  // on the mean loss
  int iterations = 0;
};

class ComparatorError : public std::runtime_error {
 public:
  ComparatorError(const std::string& what, double gradient_norm)
      : std::runtime_error(what), gradient_norm_(gradient_norm) {}
  double gradient_norm() const { return gradient_norm_; }

 private:
  double gradient_norm_;
};

/// argmin_{x in K} sum_t f_t(x).
///
/// Linear losses need a ball: x = c - r s / ||s|| with s = sum g (any point
/// of the ball when s = 0). Logistic losses are minimized on the mean loss
/// by damped Newton steps with backtracking until the gradient norm is at
/// most tol; on a ball, by projected gradient with backtracking.
ComparatorResult offline_comparator(const std::vector<LossEvent>& events, const ConstraintSet& k,
                                    double tol = 1e-8, int max_iterations = 500);

}  // namespace sketchy

#endif  // SKETCHY_COMPARATOR_HPP_
