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

#ifndef SKETCHY_REGRET_HPP_
#define SKETCHY_REGRET_HPP_

#include <vector>

namespace sketchy {

struct SlopeFit {
  double slope = 0.0;
  int points = 0;          // rounds used in the fit
  bool degenerate = false;  // no positive regret on the tail
};

/// Least-squares slope of log R_t against log t over the last half of the
/// rounds, skipping rounds with R_t <= 0. cumulative_regret[i] is R_{i+1}.
/// Needs at least 100 rounds.
SlopeFit regret_slope(const std::vector<double>& cumulative_regret);

}  // namespace sketchy

#endif  // SKETCHY_REGRET_HPP_
