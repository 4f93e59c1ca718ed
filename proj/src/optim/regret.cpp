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

#include "sketchy/regret.hpp"

#include <cmath>
#include <stdexcept>

namespace sketchy {

SlopeFit regret_slope(const std::vector<double>& r) {
  const std::size_t n = r.size();
  if (n < 100) throw std::invalid_argument("regret_slope needs at least 100 rounds");
  std::vector<double> xs, ys;
  for (std::size_t i = n / 2; i < n; ++i) {
    if (!(r[i] > 0.0)) continue;
    xs.push_back(std::log(static_cast<double>(i + 1)));
    ys.push_back(std::log(r[i]));
  }
  SlopeFit fit;
  fit.points = static_cast<int>(xs.size());
  if (fit.points < 2) {
    fit.degenerate = true;
    return fit;
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= fit.points;
  my /= fit.points;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = sxy / sxx;
  return fit;
}

}  // namespace sketchy
