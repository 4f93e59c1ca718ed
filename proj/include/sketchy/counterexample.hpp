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

#ifndef SKETCHY_COUNTEREXAMPLE_HPP_
#define SKETCHY_COUNTEREXAMPLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sketchy/optimizer_config.hpp"
#include "sketchy/regret.hpp"

namespace sketchy {

/// Linear losses f_t(x) = <x, g_t> with g_t = w_i drawn with probability
/// lambda_i from r orthonormal vectors in R^d.
struct CounterexampleStream {
  int dim = 8;
  Matrix w;              // dim x r, orthonormal columns
  Vector probabilities;  // lambda_1 >= ... >= lambda_r > 0, sum 1
  std::int64_t horizon = 20000;
  std::uint64_t seed = 0;

  /// Uniform probabilities when none are given.
  static CounterexampleStream make(int dim, int support, std::int64_t horizon, std::uint64_t seed,
                                   Vector probabilities = Vector());
  int support() const { return static_cast<int>(w.cols()); }
  std::vector<Vector> gradients() const;
  /// 2 log(r) / lambda_r.
  double warmup() const;
};

struct CounterexampleOptions {
  int dim = 8;
  int support = 8;
  int sketch_size = 4;
  std::int64_t horizon = 20000;
  int seeds = 10;
  std::uint64_t seed = 0;
  double ball_radius = 1.0;
  std::vector<std::string> methods = {"s_adagrad", "ada_fd"};
  /// Step size for every method; 0 picks D / sqrt(2).
  double eta = 0.0;
  double delta = 1e-3;  // ada_fd / fd_son
  int jobs = 1;
};

struct CounterexampleMethod {
  std::string method;
  double eta = 0.0;
  std::vector<double> final_regret;  // per seed
  std::vector<double> slope;         // per seed
  double mean_final_regret = 0.0;
  double mean_slope = 0.0;
  /// Slope of the seed-averaged regret curve.
  double pooled_slope = 0.0;
};

struct CounterexampleReport {
  CounterexampleOptions options;
  double warmup = 0.0;
  std::vector<double> tail_mean_rho;  // per seed, rounds t >= warmup
  double mean_tail_rho = 0.0;
  /// 0.5 * sum_{i >= l} lambda_i - 0.05.
  double rho_threshold = 0.0;
  std::vector<CounterexampleMethod> methods;

  const CounterexampleMethod* find(const std::string& method) const;
  nlohmann::json to_json() const;
};

CounterexampleReport counterexample_run(const CounterexampleOptions& options);

}  // namespace sketchy

#endif  // SKETCHY_COUNTEREXAMPLE_HPP_
