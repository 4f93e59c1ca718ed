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

#ifndef SKETCHY_HARNESS_HPP_
#define SKETCHY_HARNESS_HPP_

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sketchy/loss.hpp"
#include "sketchy/optimizer.hpp"

namespace sketchy {

/// Per-round record of one online run. Index i holds round i + 1.
struct RegretTrace {
  std::vector<double> cum_loss;
  std::vector<double> cum_comparator_loss;
  std::vector<double> rho_cum;
  std::vector<double> wall_seconds;
  std::vector<std::size_t> state_scalars;

  std::size_t rounds() const { return cum_loss.size(); }
  double regret(std::size_t i) const { return cum_loss[i] - cum_comparator_loss[i]; }
  std::vector<double> regret_series() const;
  double final_regret() const;
  /// sum_t f_t(x_t) / T.
  double average_loss() const;
  std::size_t peak_state_scalars() const;

  /// round,cum_loss,cum_comparator_loss,regret,rho_cum,state_scalars
  /// (wall-clock is left out so the file is reproducible).
  void write_csv(std::ostream& out) const;
};

class RunError : public std::runtime_error {
 public:
  RunError(const std::string& what, std::int64_t round) : std::runtime_error(what), round_(round) {}
  std::int64_t round() const { return round_; }

 private:
  std::int64_t round_;
};

/// Plays x_t, records f_t(x_t) and f_t(comparator), then steps on
/// grad f_t(x_t).
RegretTrace run_stream(OnlineOptimizer& opt, const std::vector<LossEvent>& events,
                       const Vector& comparator);

}  // namespace sketchy

#endif  // SKETCHY_HARNESS_HPP_
