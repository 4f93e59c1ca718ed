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

#include "sketchy/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "sketchy/comparator.hpp"
#include "sketchy/counterexample.hpp"
#include "sketchy/dataset.hpp"
#include "sketchy/loss.hpp"
#include "sketchy/report_io.hpp"
#include "sketchy/spectral_mc.hpp"
#include "sketchy/sweep.hpp"
#include "sketchy/synthetic.hpp"
#include "sketchy/verify.hpp"

#ifndef SKETCHY_DATA_DIR
#define SKETCHY_DATA_DIR "data"
#endif

namespace sketchy {
namespace {

namespace fs = std::filesystem;

/// Bad flag values or combinations; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BenchArgs {
  std::string dataset;
  std::string synthetic;
  std::vector<std::string> methods;
  std::optional<double> eta, delta, beta2, epsilon, ball_radius;
  int sketch = 10;
  std::optional<long long> horizon;
  std::optional<std::uint64_t> seed;
  std::string grid = "paper";
  int jobs = 1;
  std::string out;
};

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 7;
  int cases = 0;
  std::string out;
};

struct CounterexampleArgs {
  CounterexampleOptions o;
  std::vector<std::string> methods;
  std::string out;
};

struct IntrinsicArgs {
  MonteCarloOptions o;
  std::string out;
};

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const std::string& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::string resolve_dataset(const std::string& name) {
  if (fs::exists(name)) return name;
  const fs::path bundled = fs::path(SKETCHY_DATA_DIR) / name;
  if (fs::exists(bundled)) return bundled.string();
  return name;  // load_libsvm reports the missing file
}

void write_error(std::ostream& err, const std::string& command, const std::string& kind,
                 const std::string& message) {
  nlohmann::json j{{"error", {{"command", command}, {"kind", kind}, {"message", message}}}};
  err << j.dump() << "\n";
}

nlohmann::json metadata() { return {{"timestamp", utc_timestamp()}, {"tool", "sketchy"}}; }

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.dataset.empty() == a.synthetic.empty())
    throw UsageError("bench needs exactly one of --dataset or --synthetic");
  if (a.seed && a.synthetic.empty()) throw UsageError("--seed only applies to --synthetic streams");
  if (a.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (a.horizon && *a.horizon < 1) throw UsageError("--horizon must be positive");

  Dataset ds;
  nlohmann::json source;
  if (!a.dataset.empty()) {
    if (a.dataset == "-") {
      ds = parse_libsvm(std::cin, "stdin");
    } else {
      ds = load_libsvm(resolve_dataset(a.dataset));
    }
    source = {{"dataset", a.dataset}};
  } else {
    SyntheticSpec spec;
    try {
      spec = SyntheticSpec::parse(a.synthetic);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (a.seed) spec.seed = *a.seed;
    ds = synthetic_logistic(spec);
    source = {{"synthetic", a.synthetic}, {"seed", spec.seed}};
  }
  if (a.horizon && static_cast<std::size_t>(*a.horizon) < ds.examples.size())
    ds.examples.resize(static_cast<std::size_t>(*a.horizon));

  std::vector<std::string> methods = split_list(a.methods);
  const bool named = !methods.empty();
  if (!named) {
    methods = {"ogd", "diag_adagrad", "s_adagrad", "ada_fd", "fd_son"};
    // The full-matrix baseline costs O(d^3) per round; keep it for small d.
    if (ds.dim <= 50) methods.insert(methods.begin() + 2, "full_adagrad");
  }

  OptimizerConfig base;
  base.sketch_size = a.sketch;
  base.beta2 = a.beta2;
  base.epsilon = a.epsilon;
  base.ball_radius = a.ball_radius;

  SweepGrid grid;
  if (a.grid == "paper") {
    if (a.eta) throw UsageError("--eta conflicts with --grid paper; use --grid custom");
    grid = SweepGrid::paper();
    for (const std::string& m : methods)
      if (a.delta && grid_uses_delta(m))
        throw UsageError("--delta conflicts with --grid paper for " + m + ", whose delta is swept");
  } else if (a.grid == "custom") {
    if (!a.eta) throw UsageError("--grid custom needs --eta");
    grid = SweepGrid::single(*a.eta, a.delta);
  } else {
    throw UsageError("--grid must be paper or custom");
  }
  base.delta = a.delta;  // swept methods overwrite it

  for (const std::string& m : methods) {
    if (m == "s_shampoo") throw UsageError("s_shampoo needs a matrix parameter; bench streams are vectors");
    std::vector<OptimizerConfig> configs;
    try {
      // A flag given for a named method it does not take is an error.
      if (named) {
        OptimizerConfig raw = base;
        raw.kind = m;
        raw.eta = 1.0;
        if (grid_uses_delta(m)) raw.delta = a.delta.value_or(1.0);
        raw.validate();
      }
      configs = grid.configs(m, base);
      for (OptimizerConfig& c : configs) {
        if (grid_uses_delta(m) && !a.delta && a.grid == "custom") throw std::invalid_argument(m + " needs --delta");
        c.validate();
        if (uses_sketch(m) && c.sketch_size > ds.dim)
          throw std::invalid_argument("--sketch " + std::to_string(c.sketch_size) + " exceeds dimension " +
                                      std::to_string(ds.dim));
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("method ") + m + ": " + e.what());
    }
  }

  auto unused_by_all = [&](bool given, bool (*uses)(const std::string&), const char* flag) {
    bool any = false;
    for (const std::string& m : methods) any = any || uses(m);
    if (given && !any) throw UsageError(std::string(flag) + " is not used by any selected method");
  };
  unused_by_all(a.delta.has_value(), uses_delta, "--delta");
  unused_by_all(a.beta2.has_value(), uses_beta2, "--beta2");
  unused_by_all(a.epsilon.has_value(), uses_epsilon, "--epsilon");

  SweepProblem problem;
  problem.events = logistic_events(ds);
  problem.dim = ds.dim;
  problem.base = base;
  const ComparatorResult cmp = offline_comparator(problem.events, base.constraint());
  problem.comparator = cmp.x;

  const Leaderboard board = sweep(problem, methods, grid, a.jobs);
  out << board.table();

  if (!a.out.empty()) {
    nlohmann::json resolved{{"command", "bench"},
                            {"source", source},
                            {"examples", ds.examples.size()},
                            {"dim", ds.dim},
                            {"methods", methods},
                            {"grid", a.grid},
                            {"base", base.to_json()},
                            {"jobs", a.jobs},
                            {"comparator", {{"objective", cmp.objective},
                                            {"gradient_norm", cmp.gradient_norm},
                                            {"suboptimality_bound", cmp.suboptimality_bound}}},
                            {"metadata", metadata()}};
    write_json_file((fs::path(a.out) / "config.json").string(), resolved);
    write_json_file((fs::path(a.out) / "leaderboard.json").string(), board.to_json());
    for (const MethodResult& r : board.methods) {
      const SweepEntry* best = r.best_entry();
      if (!best) continue;
      const fs::path dir = fs::path(a.out) / "runs" / r.method;
      write_json_file((dir / "config.json").string(), best->config.to_json());
      write_trace_csv((dir / "trace.csv").string(), r.best_trace);
    }
  }
  for (const MethodResult& r : board.methods)
    if (!r.best_entry()) throw std::runtime_error("every configuration of " + r.method + " failed");
  return 0;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.cases < 0) throw UsageError("--cases must be nonnegative");
  VerifyOptions o;
  o.seed = a.seed;
  o.cases = a.cases;
  std::vector<SuiteResult> results;
  try {
    results = run_suites(a.suite, o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool ok = true;
  nlohmann::json report = nlohmann::json::array();
  char buf[256];
  for (const SuiteResult& r : results) {
    std::snprintf(buf, sizeof(buf), "%-13s %s  cases=%d  %.2fs\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                  r.cases, r.seconds);
    out << buf;
    for (const SuiteResult::Metric& m : r.metrics) {
      std::snprintf(buf, sizeof(buf), "    %-36s worst %+.3e  (%s %.1e)\n", m.name.c_str(), m.worst,
                    m.upper ? "<=" : ">=", m.limit);
      out << buf;
    }
    if (!r.passed) out << "    failed: " << r.failure << "\n";
    ok = ok && r.passed;
    report.push_back(r.to_json());
  }
  if (!a.out.empty()) {
    nlohmann::json j{{"command", "verify"}, {"suite", a.suite}, {"seed", a.seed}, {"cases", a.cases},
                     {"passed", ok}, {"suites", report}, {"metadata", metadata()}};
    for (auto& s : j["suites"]) s.erase("seconds");
    write_json_file((fs::path(a.out) / "verify.json").string(), j);
  }
  if (!ok) {
    std::string failing;
    for (const SuiteResult& r : results)
      if (!r.passed) failing += (failing.empty() ? "" : "; ") + r.name + ": " + r.failure;
    throw std::runtime_error("invariant violated: " + failing);
  }
  return 0;
}

int cmd_counterexample(CounterexampleArgs a, std::ostream& out) {
  if (a.o.sketch_size > a.o.support)
    throw UsageError("sketch size l = " + std::to_string(a.o.sketch_size) + " exceeds the support size r = " +
                     std::to_string(a.o.support) + "; the construction needs l <= r");
  if (a.o.support > a.o.dim) throw UsageError("support size r exceeds the dimension d");
  const auto methods = split_list(a.methods);
  if (!methods.empty()) a.o.methods = methods;
  CounterexampleReport rep;
  try {
    rep = counterexample_run(a.o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf), "tail mean rho %.6f (threshold %.6f, warmup %.1f rounds)\n", rep.mean_tail_rho,
                rep.rho_threshold, rep.warmup);
  out << buf;
  for (const CounterexampleMethod& m : rep.methods) {
    std::snprintf(buf, sizeof(buf), "%-12s eta %.4g  mean final regret %.4f  mean slope %.4f  pooled slope %.4f\n",
                  m.method.c_str(), m.eta, m.mean_final_regret, m.mean_slope, m.pooled_slope);
    out << buf;
  }
  if (!a.out.empty()) {
    nlohmann::json j = rep.to_json();
    j["metadata"] = metadata();
    write_json_file((fs::path(a.out) / "counterexample.json").string(), j);
  }
  return 0;
}

int cmd_intrinsic(const IntrinsicArgs& a, std::ostream& out) {
  MonteCarloResult r;
  try {
    r = intrinsic_dim_montecarlo(a.o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "intrinsic dimension %.3f +- %.3f over %d trials\n", r.mean, r.stderr_mean,
                a.o.trials);
  out << buf;
  if (!a.out.empty()) {
    nlohmann::json j = r.to_json(a.o);
    j["metadata"] = metadata();
    write_json_file((fs::path(a.out) / "intrinsic.json").string(), j);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sketched adaptive online optimizers: benchmarks, sweeps and invariant checks.", "sketchy"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Sweep online methods over a libsvm dataset or a synthetic stream");
  auto* ds = b->add_option("--dataset", bench.dataset, "libsvm file, - for standard input (a bare name also looks in the data directory)");
  auto* syn = b->add_option("--synthetic", bench.synthetic, "Synthetic stream, e.g. logistic:n=500,d=20,seed=1");
  ds->excludes(syn);
  b->add_option("--method", bench.methods,
                "Method(s): ogd, diag_adagrad, full_adagrad, s_adagrad, ada_fd, fd_son, epoch_adagrad; "
                "repeat or comma-separate")
      ->delimiter(',');
  b->add_option("--eta", bench.eta, "Step size (custom grid)");
  b->add_option("--delta", bench.delta, "Diagonal regularizer for methods that take one");
  b->add_option("--sketch", bench.sketch, "Sketch size l")->capture_default_str();
  b->add_option("--beta2", bench.beta2, "Sketch decay (s_adagrad)");
  b->add_option("--epsilon", bench.epsilon, "Ridge (s_shampoo)");
  b->add_option("--ball-radius", bench.ball_radius, "Constrain iterates to an l2 ball of this radius");
  b->add_option("--horizon", bench.horizon, "Use only the first N examples");
  b->add_option("--seed", bench.seed, "Seed for synthetic streams");
  b->add_option("--grid", bench.grid, "paper (log-spaced sweep) or custom (--eta/--delta)")
      ->check(CLI::IsMember({"paper", "custom"}))
      ->capture_default_str();
  b->add_option("--jobs", bench.jobs, "Worker threads")->capture_default_str();
  b->add_option("--out", bench.out, "Output directory");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run randomized invariant suites");
  v->add_option("--suite", verify.suite, "all or a comma-separated list of suites")->capture_default_str();
  v->add_option("--seed", verify.seed, "Seed")->capture_default_str();
  v->add_option("--cases", verify.cases, "Random cases per suite (0 = suite default)")->capture_default_str();
  v->add_option("--out", verify.out, "Write verify.json here");

  CounterexampleArgs ce;
  auto* c = app.add_subcommand("counterexample", "Stream on which a small sketch keeps escaping mass");
  c->add_option("--dim", ce.o.dim, "Ambient dimension d")->capture_default_str();
  c->add_option("--support", ce.o.support, "Support size r")->capture_default_str();
  c->add_option("--sketch", ce.o.sketch_size, "Sketch size l")->capture_default_str();
  c->add_option("--horizon", ce.o.horizon, "Rounds T")->capture_default_str();
  c->add_option("--seeds", ce.o.seeds, "Independent repetitions")->capture_default_str();
  c->add_option("--seed", ce.o.seed, "Base seed")->capture_default_str();
  c->add_option("--ball-radius", ce.o.ball_radius, "Radius of the feasible ball")->capture_default_str();
  c->add_option("--method", ce.methods, "Methods to run")->delimiter(',');
  c->add_option("--eta", ce.o.eta, "Step size (0 = D / sqrt 2)")->capture_default_str();
  c->add_option("--delta", ce.o.delta, "Delta for ada_fd and fd_son")->capture_default_str();
  c->add_option("--jobs", ce.o.jobs, "Worker threads")->capture_default_str();
  c->add_option("--out", ce.out, "Write counterexample.json here");

  IntrinsicArgs in;
  auto* i = app.add_subcommand("intrinsic", "Monte Carlo intrinsic dimension of a decayed Gaussian sum");
  i->add_option("--outer-dim", in.o.outer_dim, "Rows of each sample")->capture_default_str();
  i->add_option("--inner-dim", in.o.inner_dim, "Columns of each sample")->capture_default_str();
  i->add_option("--terms", in.o.terms, "Number of terms n")->capture_default_str();
  i->add_option("--beta2", in.o.beta2, "Decay")->capture_default_str();
  i->add_option("--trials", in.o.trials, "Trials")->capture_default_str();
  i->add_option("--seed", in.o.seed, "Seed")->capture_default_str();
  i->add_option("--jobs", in.o.jobs, "Worker threads")->capture_default_str();
  i->add_option("--out", in.out, "Write intrinsic.json here");

  std::string command = "sketchy";
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    if (!app.get_subcommands().empty()) command = app.get_subcommands().front()->get_name();
    write_error(err, command, "usage", e.what());
    return 2;
  }

  command = app.get_subcommands().front()->get_name();
  try {
    if (*b) return cmd_bench(bench, out);
    if (*v) return cmd_verify(verify, out);
    if (*c) return cmd_counterexample(ce, out);
    return cmd_intrinsic(in, out);
  } catch (const UsageError& e) {
    write_error(err, command, "usage", e.what());
    return 2;
  } catch (const ParseError& e) {
    write_error(err, command, "parse", e.what());
    return 1;
  } catch (const std::exception& e) {
    write_error(err, command, "runtime", e.what());
    return 1;
  }
}

}  // namespace sketchy
