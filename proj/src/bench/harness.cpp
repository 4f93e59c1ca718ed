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

#include "sketchy/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace sketchy {

std::vector<double> RegretTrace::regret_series() const {
  std::vector<double> r(rounds());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = regret(i);
  return r;
}

double RegretTrace::final_regret() const { return rounds() ? regret(rounds() - 1) : 0.0; }

double RegretTrace::average_loss() const {
  return rounds() ? cum_loss.back() / static_cast<double>(rounds()) : 0.0;
}

std::size_t RegretTrace::peak_state_scalars() const {
  return state_scalars.empty() ? 0 : *std::max_element(state_scalars.begin(), state_scalars.end());
}

void RegretTrace::write_csv(std::ostream& out) const {
  out << "round,cum_loss,cum_comparator_loss,regret,rho_cum,state_scalars\n";
  char buf[256];
  for (std::size_t i = 0; i < rounds(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%zu\n", i + 1, cum_loss[i],
                  cum_comparator_loss[i], regret(i), rho_cum[i], state_scalars[i]);
    out << buf;
  }
}

RegretTrace run_stream(OnlineOptimizer& opt, const std::vector<LossEvent>& events,
                       const Vector& comparator) {
  const auto dim = opt.iterate().size();
  if (comparator.size() != dim) throw std::invalid_argument("run_stream: comparator dimension mismatch");
  RegretTrace trace;
  const std::size_t n = events.size();
  trace.cum_loss.reserve(n);
  trace.cum_comparator_loss.reserve(n);
  trace.rho_cum.reserve(n);
  trace.wall_seconds.reserve(n);
  trace.state_scalars.reserve(n);

  const auto start = std::chrono::steady_clock::now();
  double loss = 0.0, comp = 0.0;
  Vector g;
  for (std::size_t t = 0; t < n; ++t) {
    try {
      loss += loss_value_and_gradient(events[t], opt.iterate(), &g);
      comp += loss_value(events[t], comparator);
      opt.step(g);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << opt.name() << " failed at round " << t + 1 << ": " << e.what();
      throw RunError(os.str(), static_cast<std::int64_t>(t + 1));
    }
    trace.cum_loss.push_back(loss);
    trace.cum_comparator_loss.push_back(comp);
    trace.rho_cum.push_back(opt.escaped_mass());
    trace.state_scalars.push_back(opt.state_scalars());
    trace.wall_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return trace;
}

}  // namespace sketchy
