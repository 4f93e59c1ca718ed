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

#ifndef SKETCHY_OPTIMIZER_CONFIG_HPP_
#define SKETCHY_OPTIMIZER_CONFIG_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sketchy/optimizer.hpp"

namespace sketchy {

/// Flat description of one optimizer run. Unset optional fields take the
/// method's default; setting a field the method does not use is an error.
struct OptimizerConfig {
  std::string kind;  // see optimizer_kinds()
  double eta = 0.0;
  int sketch_size = 10;
  std::optional<double> beta2;
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::optional<double> ball_radius;
  int rows = 0;  // s_shampoo iterate shape
  int cols = 0;
  std::int64_t epoch_interval = 1;  // epoch_adagrad
  FdMethod fd_method = FdMethod::kFactored;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  ConstraintSet constraint() const;
  /// Copy for method `kind` with the fields it does not use cleared.
  OptimizerConfig for_kind(const std::string& kind) const;

  nlohmann::json to_json() const;
  static OptimizerConfig from_json(const nlohmann::json& j);
};

const std::vector<std::string>& optimizer_kinds();
bool uses_delta(const std::string& kind);
bool uses_sketch(const std::string& kind);
bool uses_beta2(const std::string& kind);
bool uses_epsilon(const std::string& kind);

std::unique_ptr<OnlineOptimizer> make_optimizer(const OptimizerConfig& config, int dim);

}  // namespace sketchy

#endif  // SKETCHY_OPTIMIZER_CONFIG_HPP_
