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

#include "sketchy/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sketchy {

bool grid_uses_delta(const std::string& method) { return method == "ada_fd" || method == "fd_son"; }

SweepGrid SweepGrid::paper() {
  SweepGrid g;
  for (int i = 0; i < 49; ++i) g.etas.push_back(std::pow(10.0, -6.0 + 6.0 * i / 48.0));
  for (int e = -6; e <= 0; ++e) {
    g.deltas.push_back(std::pow(10.0, e));
    g.delta_etas.push_back(std::pow(10.0, e));
  }
  return g;
}

SweepGrid SweepGrid::single(double eta, std::optional<double> delta) {
  SweepGrid g;
  g.etas = {eta};
  g.delta_etas = {eta};
  if (delta) g.deltas = {*delta};
  return g;
}

std::vector<OptimizerConfig> SweepGrid::configs(const std::string& method,
                                                const OptimizerConfig& base) const {
  std::vector<OptimizerConfig> out;
  // Shared settings a method does not take are dropped, not rejected.
  OptimizerConfig c = base.for_kind(method);
  if (grid_uses_delta(method)) {
    if (deltas.empty()) throw std::invalid_argument(method + " needs a delta value");
    for (double d : deltas)
      for (double e : delta_etas) {
        c.delta = d;
        c.eta = e;
        out.push_back(c);
      }
  } else {
    for (double e : etas) {
      c.eta = e;
      out.push_back(c);
    }
  }
  return out;
}

namespace {

SweepEntry run_one(const SweepProblem& p, const OptimizerConfig& c, RegretTrace* keep) {
  SweepEntry e;
  e.config = c;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto opt = make_optimizer(c, p.dim);
    RegretTrace trace = run_stream(*opt, p.events, p.comparator);
    e.average_loss = trace.average_loss();
    e.final_regret = trace.final_regret();
    e.ok = std::isfinite(e.average_loss);
    if (!e.ok) e.error = "non-finite loss";
    if (keep) *keep = std::move(trace);
  } catch (const std::exception& ex) {
    e.ok = false;
    e.error = ex.what();
  }
  e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return e;
}

void run_parallel(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), n));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& t : pool) t.join();
}

nlohmann::json number_or_null(std::optional<double> v) {
  return v && std::isfinite(*v) ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

Leaderboard sweep(const SweepProblem& problem, const std::vector<std::string>& methods,
                  const SweepGrid& grid, int jobs) {
  if (problem.events.empty()) throw std::invalid_argument("sweep: no loss events");
  std::vector<std::pair<std::size_t, OptimizerConfig>> work;
  Leaderboard board;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodResult r;
    r.method = methods[m];
    board.methods.push_back(std::move(r));
    for (OptimizerConfig& c : grid.configs(methods[m], problem.base)) work.emplace_back(m, std::move(c));
  }
  std::vector<SweepEntry> results(work.size());
  run_parallel(work.size(), jobs, [&](std::size_t i) { results[i] = run_one(problem, work[i].second, nullptr); });
  for (std::size_t i = 0; i < work.size(); ++i)
    board.methods[work[i].first].entries.push_back(std::move(results[i]));

  for (MethodResult& r : board.methods) {
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      const SweepEntry& e = r.entries[i];
      if (e.ok && (r.best < 0 || e.average_loss < r.entries[r.best].average_loss)) r.best = static_cast<int>(i);
    }
  }
  // Re-run each winner once to keep its trace; runs are deterministic.
  run_parallel(board.methods.size(), jobs, [&](std::size_t m) {
    MethodResult& r = board.methods[m];
    if (r.best < 0) return;
    run_one(problem, r.entries[r.best].config, &r.best_trace);
    if (r.best_trace.rounds() >= 100) {
      const SlopeFit fit = regret_slope(r.best_trace.regret_series());
      if (!fit.degenerate) r.slope = fit;
    }
  });

  std::stable_sort(board.methods.begin(), board.methods.end(),
                   [](const MethodResult& a, const MethodResult& b) {
                     if ((a.best < 0) != (b.best < 0)) return b.best < 0;
                     if (a.best < 0) return false;
                     return a.entries[a.best].average_loss < b.entries[b.best].average_loss;
                   });
  return board;
}

int Leaderboard::rank_of(const std::string& method) const {
  for (std::size_t i = 0; i < methods.size(); ++i)
    if (methods[i].method == method) return static_cast<int>(i) + 1;
  return 0;
}

const MethodResult* Leaderboard::find(const std::string& method) const {
  for (const MethodResult& r : methods)
    if (r.method == method) return &r;
  return nullptr;
}

nlohmann::json Leaderboard::to_json(bool with_tables) const {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const MethodResult& r = methods[i];
    nlohmann::json j{{"rank", i + 1}, {"method", r.method}, {"configs", r.entries.size()}};
    std::size_t failed = 0;
    for (const SweepEntry& e : r.entries) failed += !e.ok;
    j["failed"] = failed;
    if (const SweepEntry* b = r.best_entry()) {
      j["best_eta"] = b->config.eta;
      j["best_delta"] = number_or_null(b->config.delta);
      j["final_average_loss"] = b->average_loss;
      j["final_regret"] = b->final_regret;
    } else {
      j["best_eta"] = j["best_delta"] = j["final_average_loss"] = j["final_regret"] = nullptr;
    }
    j["slope"] = r.slope ? nlohmann::json(r.slope->slope) : nlohmann::json(nullptr);
    if (with_tables) {
      nlohmann::json table = nlohmann::json::array();
      for (const SweepEntry& e : r.entries) {
        nlohmann::json row{{"eta", e.config.eta}, {"delta", number_or_null(e.config.delta)}};
        if (e.ok) {
          row["average_loss"] = e.average_loss;
          row["final_regret"] = e.final_regret;
        } else {
          row["error"] = e.error;
        }
        table.push_back(std::move(row));
      }
      j["table"] = std::move(table);
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::string Leaderboard::table() const {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-4s %-14s %-12s %-12s %-12s %-8s\n", "rank", "method", "avg_loss",
                "best_eta", "best_delta", "slope");
  os << buf;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const MethodResult& r = methods[i];
    const SweepEntry* b = r.best_entry();
    if (!b) {
      std::snprintf(buf, sizeof(buf), "%-4zu %-14s all %zu configurations failed\n", i + 1,
                    r.method.c_str(), r.entries.size());
      os << buf;
      continue;
    }
    char delta[32] = "-";
    if (b->config.delta) std::snprintf(delta, sizeof(delta), "%.3g", *b->config.delta);
    char slope[32] = "-";
    if (r.slope) std::snprintf(slope, sizeof(slope), "%.3f", r.slope->slope);
    std::snprintf(buf, sizeof(buf), "%-4zu %-14s %-12.6f %-12.3g %-12s %-8s\n", i + 1, r.method.c_str(),
                  b->average_loss, b->config.eta, delta, slope);
    os << buf;
  }
  return os.str();
}

}  // namespace sketchy
