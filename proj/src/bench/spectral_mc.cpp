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

#include "sketchy/spectral_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "sketchy/rng.hpp"

namespace sketchy {
namespace {

// Columns per symmetric rank-k update.
constexpr int kBatchColumns = 256;

}  // namespace

double intrinsic_dimension_trial(const MonteCarloOptions& o, std::uint64_t trial) {
  if (o.outer_dim < 1 || o.inner_dim < 1 || o.terms < 1)
    throw std::invalid_argument("intrinsic: dimensions and n must be positive");
  if (!(o.beta2 > 0.0 && o.beta2 <= 1.0)) throw std::invalid_argument("intrinsic: beta2 must lie in (0, 1]");
  Rng rng = Rng(o.seed).split(trial);
  const int per_batch = std::max(1, kBatchColumns / o.inner_dim);
  Matrix c = Matrix::Zero(o.outer_dim, o.outer_dim);
  Matrix y(o.outer_dim, static_cast<Eigen::Index>(per_batch) * o.inner_dim);
  for (int start = 0; start < o.terms; start += per_batch) {
    const int count = std::min(per_batch, o.terms - start);
    for (int k = 0; k < count; ++k) {
      const int i = start + k;
      const double scale = std::pow(o.beta2, 0.5 * i);
      for (int j = 0; j < o.inner_dim; ++j) {
        auto col = y.col(static_cast<Eigen::Index>(k) * o.inner_dim + j);
        for (Eigen::Index r = 0; r < col.size(); ++r) col(r) = scale * rng.normal();
      }
    }
    c.selfadjointView<Eigen::Lower>().rankUpdate(y.leftCols(static_cast<Eigen::Index>(count) * o.inner_dim));
  }
  c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
  return intrinsic_dimension(c);
}

MonteCarloResult intrinsic_dim_montecarlo(const MonteCarloOptions& o) {
  if (o.trials < 1) throw std::invalid_argument("intrinsic: need at least one trial");
  MonteCarloResult r;
  r.values.assign(static_cast<std::size_t>(o.trials), 0.0);
  if (o.jobs <= 1) {
    for (int t = 0; t < o.trials; ++t) r.values[static_cast<std::size_t>(t)] = intrinsic_dimension_trial(o, static_cast<std::uint64_t>(t));
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < std::min(o.jobs, o.trials); ++j)
      pool.emplace_back([&] {
        for (int t; (t = next.fetch_add(1)) < o.trials;)
          r.values[static_cast<std::size_t>(t)] = intrinsic_dimension_trial(o, static_cast<std::uint64_t>(t));
      });
    for (auto& th : pool) th.join();
  }
  double sum = 0.0;
  for (double v : r.values) sum += v;
  r.mean = sum / o.trials;
  if (o.trials > 1) {
    double ss = 0.0;
    for (double v : r.values) ss += (v - r.mean) * (v - r.mean);
    r.stderr_mean = std::sqrt(ss / (o.trials - 1)) / std::sqrt(static_cast<double>(o.trials));
  }
  return r;
}

nlohmann::json MonteCarloResult::to_json(const MonteCarloOptions& o) const {
  return {{"outer_dim", o.outer_dim}, {"inner_dim", o.inner_dim}, {"n", o.terms},
          {"beta2", o.beta2},         {"trials", o.trials},       {"seed", o.seed},
          {"values", values},         {"mean", mean},             {"stderr", stderr_mean}};
}

}  // namespace sketchy
