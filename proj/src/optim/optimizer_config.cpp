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

#include "sketchy/optimizer_config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sketchy {
namespace {

bool one_of(const std::string& kind, std::initializer_list<const char*> names) {
  return std::any_of(names.begin(), names.end(), [&](const char* n) { return kind == n; });
}

void reject_unused(bool set, const std::string& kind, const char* field) {
  if (set) throw std::invalid_argument(std::string(field) + " is not a parameter of " + kind);
}

}  // namespace

const std::vector<std::string>& optimizer_kinds() {
  static const std::vector<std::string> kinds = {"ogd",    "diag_adagrad", "full_adagrad",
                                                 "s_adagrad", "ada_fd",   "fd_son",
                                                 "s_shampoo", "epoch_adagrad"};
  return kinds;
}

bool uses_delta(const std::string& kind) {
  return one_of(kind, {"full_adagrad", "ada_fd", "fd_son", "epoch_adagrad"});
}

bool uses_beta2(const std::string& kind) { return one_of(kind, {"s_adagrad", "s_shampoo"}); }

bool uses_epsilon(const std::string& kind) { return kind == "s_shampoo"; }

OptimizerConfig OptimizerConfig::for_kind(const std::string& k) const {
  OptimizerConfig c = *this;
  c.kind = k;
  if (!uses_delta(k)) c.delta.reset();
  if (!uses_epsilon(k)) c.epsilon.reset();
  if (!uses_beta2(k)) c.beta2.reset();
  return c;
}

bool uses_sketch(const std::string& kind) {
  return one_of(kind, {"s_adagrad", "ada_fd", "fd_son", "s_shampoo"});
}

void OptimizerConfig::validate() const {
  const auto& kinds = optimizer_kinds();
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
    throw std::invalid_argument("unknown method '" + kind + "'");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be positive");
  if (!uses_delta(kind)) reject_unused(delta.has_value(), kind, "delta");
  if (!uses_epsilon(kind)) reject_unused(epsilon.has_value(), kind, "epsilon");
  if (!uses_beta2(kind)) reject_unused(beta2.has_value(), kind, "beta2");
  if (delta && !(*delta >= 0.0)) throw std::invalid_argument("delta must be nonnegative");
  if (kind == "epoch_adagrad" && !(delta.value_or(0.0) > 0.0))
    throw std::invalid_argument("epoch_adagrad needs delta > 0 (G0 = delta I)");
  if (epsilon && !(*epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (beta2 && !(*beta2 >= 0.0 && *beta2 <= 1.0)) throw std::invalid_argument("beta2 must lie in [0, 1]");
  if (ball_radius && !(*ball_radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  if (uses_sketch(kind) && sketch_size < 2) throw std::invalid_argument("sketch size must be at least 2");
  if (kind == "s_shampoo" && (rows < 1 || cols < 1))
    throw std::invalid_argument("s_shampoo needs a matrix shape");
  if (epoch_interval < 1) throw std::invalid_argument("epoch interval must be at least 1");
}

ConstraintSet OptimizerConfig::constraint() const {
  if (!ball_radius) return ConstraintSet::unconstrained();
  return kind == "s_shampoo" ? ConstraintSet::frobenius_ball(*ball_radius)
                             : ConstraintSet::l2_ball(*ball_radius);
}

nlohmann::json OptimizerConfig::to_json() const {
  nlohmann::json j{{"kind", kind}, {"eta", eta}};
  if (uses_sketch(kind)) {
    j["sketch_size"] = sketch_size;
    j["fd_method"] = to_string(fd_method);
  }
  if (beta2) j["beta2"] = *beta2;
  if (delta) j["delta"] = *delta;
  if (epsilon) j["epsilon"] = *epsilon;
  if (ball_radius) j["ball_radius"] = *ball_radius;
  if (kind == "s_shampoo") {
    j["rows"] = rows;
    j["cols"] = cols;
  }
  if (kind == "epoch_adagrad") j["epoch_interval"] = epoch_interval;
  return j;
}

OptimizerConfig OptimizerConfig::from_json(const nlohmann::json& j) {
  OptimizerConfig c;
  try {
    c.kind = j.at("kind").get<std::string>();
    c.eta = j.at("eta").get<double>();
    c.sketch_size = j.value("sketch_size", 10);
    if (j.contains("fd_method")) c.fd_method = parse_fd_method(j.at("fd_method").get<std::string>());
    if (j.contains("beta2")) c.beta2 = j.at("beta2").get<double>();
    if (j.contains("delta")) c.delta = j.at("delta").get<double>();
    if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("ball_radius")) c.ball_radius = j.at("ball_radius").get<double>();
    c.rows = j.value("rows", 0);
    c.cols = j.value("cols", 0);
    c.epoch_interval = j.value("epoch_interval", std::int64_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("optimizer config: ") + e.what());
  }
  c.validate();
  return c;
}

std::unique_ptr<OnlineOptimizer> make_optimizer(const OptimizerConfig& c, int dim) {
  c.validate();
  const ConstraintSet k = c.constraint();
  const double delta = c.delta.value_or(0.0);
  if (c.kind == "ogd") return std::make_unique<Ogd>(dim, c.eta, k);
  if (c.kind == "diag_adagrad") return std::make_unique<DiagAdaGrad>(dim, c.eta, k);
  if (c.kind == "full_adagrad") return std::make_unique<FullAdaGrad>(dim, c.eta, delta, k);
  if (c.kind == "s_adagrad")
    return std::make_unique<SketchyAdaGrad>(dim, c.sketch_size, c.eta, k, c.beta2.value_or(1.0),
                                            c.fd_method);
  if (c.kind == "ada_fd") return std::make_unique<AdaFd>(dim, c.sketch_size, c.eta, delta, k);
  if (c.kind == "fd_son") return std::make_unique<FdSon>(dim, c.sketch_size, c.eta, delta, k);
  if (c.kind == "epoch_adagrad")
    return std::make_unique<EpochAdaGrad>(delta * Matrix::Identity(dim, dim), c.eta,
                                          EpochSchedule::every(c.epoch_interval), k);
  if (c.kind == "s_shampoo") {
    if (static_cast<long>(c.rows) * c.cols != dim)
      throw std::invalid_argument("s_shampoo shape does not match the problem dimension");
    if (k.is_ball()) throw std::invalid_argument("s_shampoo runs unconstrained");
    return std::make_unique<SketchyShampoo>(c.rows, c.cols, std::min(c.sketch_size, c.rows),
                                            std::min(c.sketch_size, c.cols), c.eta,
                                            c.epsilon.value_or(SketchyShampoo::kDefaultEpsilon),
                                            c.beta2.value_or(1.0), c.fd_method);
  }
  throw std::invalid_argument("unknown method '" + c.kind + "'");
}

}  // namespace sketchy
