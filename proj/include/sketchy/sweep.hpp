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

#ifndef SKETCHY_SWEEP_HPP_
#define SKETCHY_SWEEP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sketchy/harness.hpp"
#include "sketchy/optimizer_config.hpp"
#include "sketchy/regret.hpp"

namespace sketchy {

/// Hyperparameter grid. Methods with a fixed diagonal (ada_fd, fd_son) use
/// deltas x delta_etas; every other method uses etas.
struct SweepGrid {
  std::vector<double> etas;
  std::vector<double> deltas;
  std::vector<double> delta_etas;

  /// 49 log-spaced etas on [1e-6, 1]; 7 x 7 decades for delta methods.
  static SweepGrid paper();
  /// One configuration per method.
  static SweepGrid single(double eta, std::optional<double> delta);

  std::vector<OptimizerConfig> configs(const std::string& method, const OptimizerConfig& base) const;
};

bool grid_uses_delta(const std::string& method);

struct SweepProblem {
  std::vector<LossEvent> events;
  int dim = 0;
  Vector comparator;
  /// Shared settings (sketch size, ball radius, shape...); kind/eta/delta
  /// are filled in per configuration.
  OptimizerConfig base;
};

struct SweepEntry {
  OptimizerConfig config;
  bool ok = false;
  std::string error;
  double average_loss = 0.0;
  double final_regret = 0.0;
  double seconds = 0.0;
};

struct MethodResult {
  std::string method;
  std::vector<SweepEntry> entries;
  int best = -1;  // index into entries, -1 if every configuration failed
  RegretTrace best_trace;
  std::optional<SlopeFit> slope;

  const SweepEntry* best_entry() const { return best < 0 ? nullptr : &entries[best]; }
};

struct Leaderboard {
  std::vector<MethodResult> methods;  // ranked, best first

  /// Rank (1-based) of a method, 0 if absent.
  int rank_of(const std::string& method) const;
  const MethodResult* find(const std::string& method) const;
  nlohmann::json to_json(bool with_tables = true) const;
  std::string table() const;
};

/// Runs every configuration of every method, in parallel over `jobs`
/// threads. Results do not depend on `jobs`.
Leaderboard sweep(const SweepProblem& problem, const std::vector<std::string>& methods,
                  const SweepGrid& grid, int jobs = 1);

}  // namespace sketchy

#endif  // SKETCHY_SWEEP_HPP_
