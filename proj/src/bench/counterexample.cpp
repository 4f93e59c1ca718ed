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

#include "sketchy/counterexample.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "sketchy/comparator.hpp"
#include "sketchy/harness.hpp"
#include "sketchy/rng.hpp"
#include "sketchy/synthetic.hpp"

namespace sketchy {

CounterexampleStream CounterexampleStream::make(int dim, int support, std::int64_t horizon,
                                                std::uint64_t seed, Vector probabilities) {
  if (support < 1 || support > dim) throw std::invalid_argument("counterexample: need 1 <= r <= d");
  if (horizon < 1) throw std::invalid_argument("counterexample: horizon must be positive");
  if (probabilities.size() == 0) probabilities = Vector::Constant(support, 1.0 / support);
  if (probabilities.size() != support || (probabilities.array() <= 0.0).any() ||
      std::abs(probabilities.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("counterexample: probabilities must be positive and sum to 1");
  CounterexampleStream s;
  s.dim = dim;
  Rng rng = Rng(seed).split(0);
  s.w = orthonormal_columns(dim, support, rng);
  s.probabilities = std::move(probabilities);
  s.horizon = horizon;
  s.seed = seed;
  return s;
}

std::vector<Vector> CounterexampleStream::gradients() const {
  Rng rng = Rng(seed).split(1);
  std::vector<double> cdf(static_cast<std::size_t>(support()));
  std::partial_sum(probabilities.data(), probabilities.data() + support(), cdf.begin());
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t t = 0; t < horizon; ++t) {
    const double u = rng.uniform() * cdf.back();
    std::size_t i = 0;
    while (i + 1 < cdf.size() && u >= cdf[i]) ++i;
    out.push_back(w.col(static_cast<Eigen::Index>(i)));
  }
  return out;
}

double CounterexampleStream::warmup() const {
  return 2.0 * std::log(static_cast<double>(support())) / probabilities.minCoeff();
}

const CounterexampleMethod* CounterexampleReport::find(const std::string& method) const {
  for (const auto& m : methods)
    if (m.method == method) return &m;
  return nullptr;
}

namespace {

struct SeedResult {
  double tail_rho = 0.0;
  std::vector<RegretTrace> traces;  // one per method
};

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

CounterexampleReport counterexample_run(const CounterexampleOptions& o) {
  if (o.sketch_size > o.support)
    throw std::invalid_argument("counterexample: sketch size l must not exceed the support size r");
  if (o.seeds < 1) throw std::invalid_argument("counterexample: need at least one seed");
  CounterexampleReport report;
  report.options = o;
  const ConstraintSet ball = ConstraintSet::l2_ball(o.ball_radius);
  const double eta = o.eta > 0.0 ? o.eta : SketchyAdaGrad::default_eta(ball);

  std::vector<SeedResult> seeds(static_cast<std::size_t>(o.seeds));
  auto run_seed = [&](std::size_t s) {
    const CounterexampleStream stream =
        CounterexampleStream::make(o.dim, o.support, o.horizon, o.seed + s);
    const auto grads = stream.gradients();
    const auto events = linear_events(grads);

    // Escaped mass of a plain FD sketch over the stream.
    FdSketch sketch(o.dim, o.sketch_size);
    const auto warm = static_cast<std::int64_t>(std::ceil(stream.warmup()));
    double tail = 0.0;
    std::int64_t count = 0;
    for (std::int64_t t = 1; t <= o.horizon; ++t) {
      const double rho = sketch.update(grads[static_cast<std::size_t>(t - 1)]);
      if (t >= warm) {
        tail += rho;
        ++count;
      }
    }
    seeds[s].tail_rho = count ? tail / static_cast<double>(count) : 0.0;

    const Vector comparator = offline_comparator(events, ball).x;
    for (const std::string& m : o.methods) {
      OptimizerConfig c;
      c.kind = m;
      c.eta = eta;
      c.sketch_size = o.sketch_size;
      c.ball_radius = o.ball_radius;
      if (uses_delta(m)) c.delta = o.delta;
      auto opt = make_optimizer(c, o.dim);
      seeds[s].traces.push_back(run_stream(*opt, events, comparator));
    }
  };
  if (o.jobs <= 1) {
    for (std::size_t s = 0; s < seeds.size(); ++s) run_seed(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < o.jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t s; (s = next.fetch_add(1)) < seeds.size();) run_seed(s);
      });
    for (auto& t : pool) t.join();
  }

  report.warmup = CounterexampleStream::make(o.dim, o.support, 1, o.seed).warmup();
  double tail_lambda = 0.0;
  const double lambda = 1.0 / o.support;
  for (int i = o.sketch_size; i <= o.support; ++i) tail_lambda += lambda;
  report.rho_threshold = 0.5 * tail_lambda - 0.05;
  for (const SeedResult& s : seeds) report.tail_mean_rho.push_back(s.tail_rho);
  report.mean_tail_rho = mean(report.tail_mean_rho);

  for (std::size_t m = 0; m < o.methods.size(); ++m) {
    CounterexampleMethod cm;
    cm.method = o.methods[m];
    cm.eta = eta;
    std::vector<double> pooled(static_cast<std::size_t>(o.horizon), 0.0);
    for (const SeedResult& s : seeds) {
      const RegretTrace& tr = s.traces[m];
      cm.final_regret.push_back(tr.final_regret());
      const auto series = tr.regret_series();
      for (std::size_t t = 0; t < series.size(); ++t) pooled[t] += series[t] / o.seeds;
      if (series.size() >= 100) cm.slope.push_back(regret_slope(series).slope);
    }
    cm.mean_final_regret = mean(cm.final_regret);
    cm.mean_slope = mean(cm.slope);
    if (pooled.size() >= 100) cm.pooled_slope = regret_slope(pooled).slope;
    report.methods.push_back(std::move(cm));
  }
  return report;
}

nlohmann::json CounterexampleReport::to_json() const {
  nlohmann::json methods_json = nlohmann::json::array();
  for (const auto& m : methods)
    methods_json.push_back({{"method", m.method},
                            {"eta", m.eta},
                            {"final_regret", m.final_regret},
                            {"slope", m.slope},
                            {"mean_final_regret", m.mean_final_regret},
                            {"mean_slope", m.mean_slope},
                            {"pooled_slope", m.pooled_slope}});
  return {{"dim", options.dim},
          {"support", options.support},
          {"sketch_size", options.sketch_size},
          {"horizon", options.horizon},
          {"seeds", options.seeds},
          {"first_seed", options.seed},
          {"ball_radius", options.ball_radius},
          {"delta", options.delta},
          {"warmup_rounds", warmup},
          {"tail_mean_rho", tail_mean_rho},
          {"mean_tail_rho", mean_tail_rho},
          {"rho_threshold", rho_threshold},
          {"methods", methods_json}};
}

}  // namespace sketchy
