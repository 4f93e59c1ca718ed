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

// Acceptance run: one PASS/FAIL line per criterion. Checks lean on oracles
// written against Eigen and Boost rather than the library's own numerics.
//
//   acceptance            run everything
//   acceptance 1 3 10     run a subset
//
// Exit status is the number of failures not listed in kKnownFailures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "sketchy/comparator.hpp"
#include "sketchy/constraint.hpp"
#include "sketchy/counterexample.hpp"
#include "sketchy/dataset.hpp"
#include "sketchy/fd_sketch.hpp"
#include "sketchy/harness.hpp"
#include "sketchy/linalg.hpp"
#include "sketchy/loss.hpp"
#include "sketchy/optimizer.hpp"
#include "sketchy/optimizer_config.hpp"
#include "sketchy/spectral_mc.hpp"
#include "sketchy/sweep.hpp"
#include "sketchy/synthetic.hpp"
#include "test_util.hpp"

namespace sketchy {
namespace {

using testing::oracle_eigenvalues;
using testing::oracle_min_eig;
using testing::oracle_power;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Criteria expected to fail, with the reason printed next to the FAIL line.
const std::map<int, std::string> kKnownFailures = {
    {5, "tail-mean rho is capped at 1/l = 0.25 by the trace identity, below the 0.2625 threshold; see README"},
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Stream generators shared by several criteria. Each draws a different
// spectral shape so bounds are exercised away from the isotropic case.
std::vector<Vector> random_stream(Rng& rng, int d, int n) {
  const int shape = static_cast<int>(rng.below(3));
  Vector scale = Vector::Ones(d);
  if (shape == 1)
    for (int i = 0; i < d; ++i) scale(i) = std::pow(0.6, i);
  const Matrix rot = testing::random_orthonormal(rng, d, d);
  const int rank = shape == 2 ? 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d))) : d;
  std::vector<Vector> out;
  for (int t = 0; t < n; ++t) {
    Vector z = rng.normal_vector(d).cwiseProduct(scale);
    z.tail(d - rank).setZero();
    out.push_back(rot * z * (0.2 + 2.0 * rng.uniform()));
  }
  return out;
}

Matrix discounted_covariance(const std::vector<Vector>& grads, double beta) {
  const int d = static_cast<int>(grads.front().size());
  Matrix g = Matrix::Zero(d, d);
  for (const Vector& v : grads) g = beta * g + v * v.transpose();
  return g;
}

// min_{k < l} sum_{i > k} lambda_i / (l - k), 1-based i.
double bound_oracle(const Matrix& cov, int l) {
  const Vector lam = oracle_eigenvalues(cov).cwiseMax(0.0);
  const int d = static_cast<int>(lam.size());
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < l; ++k) best = std::min(best, lam.tail(d - k).sum() / (l - k));
  return best;
}

double trace_sqrt(const Matrix& m) { return oracle_eigenvalues(m).cwiseMax(0.0).cwiseSqrt().sum(); }

// ---------------------------------------------------------------------------
// 1 + 6: escaped-mass bound and the regret bound.

struct BoundRuns {
  int cases = 0;
  double worst_mass_margin = -std::numeric_limits<double>::infinity();  // mass - bound
  int regret_runs = 0;
  double worst_regret_margin = -std::numeric_limits<double>::infinity();  // regret - bound
  std::string first_failure;
};

const BoundRuns& bound_runs() {
  static const BoundRuns runs = [] {
    BoundRuns r;
    Rng root(20260101);
    const double betas[] = {1.0, 0.99, 0.9};
    for (int c = 0; c < 1000; ++c) {
      Rng rng = root.split(static_cast<std::uint64_t>(c));
      const int d = 2 + static_cast<int>(rng.below(15));
      const int l = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 1)));
      const double beta = betas[rng.below(3)];
      const auto grads = random_stream(rng, d, 1 + static_cast<int>(rng.below(80)));

      FdSketch sketch(d, l, beta);
      for (const Vector& g : grads) sketch.update(g);
      const double margin = sketch.escaped_mass() - bound_oracle(discounted_covariance(grads, beta), l);
      r.worst_mass_margin = std::max(r.worst_mass_margin, margin);
      if (margin > 1e-8 && r.first_failure.empty())
        r.first_failure = "mass bound, case " + std::to_string(c);
      ++r.cases;

      if (beta != 1.0) continue;
      // Linear losses on a ball of diameter D with eta = D / sqrt(2).
      const double diam = 0.5 + 3.5 * rng.uniform();
      const auto ball = ConstraintSet::l2_ball(diam / 2);
      SketchyAdaGrad opt(d, l, diam / std::sqrt(2.0), ball);
      Vector sum = Vector::Zero(d);
      double played = 0.0;
      for (const Vector& g : grads) {
        played += g.dot(opt.iterate());
        sum += g;
        opt.step(g);
      }
      const double regret = played + (diam / 2) * sum.norm();
      const double bound = diam * (std::sqrt(2.0) * trace_sqrt(discounted_covariance(grads, 1.0)) +
                                   d * std::sqrt(opt.escaped_mass() / 2));
      r.worst_regret_margin = std::max(r.worst_regret_margin, regret - bound);
      if (regret > bound + 1e-6 && r.first_failure.empty())
        r.first_failure = "regret bound, case " + std::to_string(c);
      ++r.regret_runs;
    }
    return r;
  }();
  return runs;
}

Outcome criterion_escaped_mass() {
  const BoundRuns& r = bound_runs();
  Outcome o;
  o.pass = r.cases == 1000 && r.worst_mass_margin <= 1e-8;
  o.detail = std::to_string(r.cases) + " streams, max(mass - bound) = " + fmt("%.3g", r.worst_mass_margin) +
             " (limit 1e-8)";
  return o;
}

Outcome criterion_regret_bound() {
  const BoundRuns& r = bound_runs();
  Outcome o;
  o.pass = r.regret_runs > 0 && r.worst_regret_margin <= 1e-6;
  o.detail = std::to_string(r.regret_runs) + " runs, max(regret - bound) = " + fmt("%.3g", r.worst_regret_margin) +
             " (limit 1e-6)";
  return o;
}

// ---------------------------------------------------------------------------
// 2: sandwich identity on rank-one streams.

Outcome criterion_sandwich() {
  Rng root(20260202);
  double worst_identity = 0.0, worst_lower = 0.0, worst_upper = 0.0;
  int streams = 0, steps = 0;
  for (int c = 0; c < 300; ++c) {
    Rng rng = root.split(static_cast<std::uint64_t>(c));
    const int d = 2 + static_cast<int>(rng.below(11));
    const int l = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 1)));
    const auto grads = random_stream(rng, d, 1 + static_cast<int>(rng.below(60)));
    FdSketch sketch(d, l);
    Matrix g = Matrix::Zero(d, d), deflated = Matrix::Zero(d, d);
    for (const Vector& v : grads) {
      // Projector onto the range of the pre-deflation matrix, from Eigen.
      const Matrix before = sketch.covariance() + v * v.transpose();
      const Matrix range = testing::oracle_range_projector(before, 1e-13);
      const double rho = sketch.update(v);
      g += v * v.transpose();
      deflated += rho * (Matrix::Identity(d, d) - range);
      const Matrix bar = sketch.covariance();
      Matrix tilde = bar;
      tilde.diagonal().array() += sketch.escaped_mass();
      worst_identity = std::max(worst_identity, max_abs(tilde - g - deflated) / (1.0 + max_abs(g)));
      worst_lower = std::min(worst_lower, oracle_min_eig(g - bar));
      worst_upper = std::min(worst_upper, oracle_min_eig(tilde - g));
      ++steps;
    }
    ++streams;
  }
  Outcome o;
  o.pass = worst_identity <= 1e-7 && worst_lower >= -1e-8 && worst_upper >= -1e-8;
  o.detail = std::to_string(streams) + " streams / " + std::to_string(steps) + " steps, identity " +
             fmt("%.2g", worst_identity) + " (<= 1e-7), min eig(G - Gbar) " + fmt("%.2g", worst_lower) +
             ", min eig(Gtilde - G) " + fmt("%.2g", worst_upper) + " (>= -1e-8)";
  return o;
}

// ---------------------------------------------------------------------------
// 3: exact recovery on rank-deficient streams.

Outcome criterion_recovery() {
  Rng root(20260303);
  double worst_lib = 0.0, worst_eigen = 0.0, total_rho = 0.0;
  int cases = 0, redraws = 0;
  while (cases < 100) {
    Rng rng = root.split(static_cast<std::uint64_t>(cases + 1000 * redraws));
    const int d = 3 + static_cast<int>(rng.below(8));
    const int l = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 1)));
    const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(l - 1)));
    const Matrix basis = testing::random_orthonormal(rng, d, rank);
    std::vector<Vector> grads;
    const int n = 5 + static_cast<int>(rng.below(56));
    for (int t = 0; t < n; ++t) grads.push_back(basis * rng.normal_vector(rank));
    // Nearly rank-deficient covariances make any two pseudo-inverses
    // disagree at the level of their rank cutoffs; draw again.
    const Vector lam = oracle_eigenvalues(discounted_covariance(grads, 1.0));
    if (lam(std::min(rank, n) - 1) < 1e-4 * lam(0)) {
      ++redraws;
      continue;
    }
    const bool ball = cases % 2 == 1;
    const ConstraintSet k = ball ? ConstraintSet::l2_ball(0.5 + rng.uniform()) : ConstraintSet();
    const double eta = 0.1 + rng.uniform();
    SketchyAdaGrad opt(d, l, eta, k);
    FullAdaGrad full(d, eta, 0.0, k);
    Matrix acc = Matrix::Zero(d, d);
    Vector x = Vector::Zero(d);
    for (const Vector& g : grads) {
      opt.step(g);
      full.step(g);
      const double scale = std::max(1.0, opt.iterate().cwiseAbs().maxCoeff());
      worst_lib = std::max(worst_lib, (opt.iterate() - full.iterate()).cwiseAbs().maxCoeff() / scale);
      if (!ball) {
        acc += g * g.transpose();
        x -= eta * oracle_power(acc, -0.5) * g;
        worst_eigen = std::max(worst_eigen, (opt.iterate() - x).cwiseAbs().maxCoeff() / scale);
      }
    }
    total_rho += opt.escaped_mass();
    ++cases;
  }
  Outcome o;
  o.pass = total_rho == 0.0 && worst_lib <= 1e-8 && worst_eigen <= 1e-8;
  o.detail = std::to_string(cases) + " cases (" + std::to_string(redraws) +
             " ill-conditioned redraws), sum rho = " + fmt("%g", total_rho) + ", vs full AdaGrad " +
             fmt("%.2g", worst_lib) + ", vs Eigen replay " + fmt("%.2g", worst_eigen) + " (<= 1e-8)";
  return o;
}

// ---------------------------------------------------------------------------
// 4: a9a sweep on the 49-point grid with l = 10.

long double replay_average_loss(const Dataset& ds, const OptimizerConfig& c) {
  auto opt = make_optimizer(c, ds.dim);
  long double total = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Vector a = ds.dense(i);
    const double y = ds.examples[i].label;
    const long double m = y * static_cast<long double>(a.dot(opt->iterate()));
    total += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    opt->step(-y * a / (1.0 + std::exp(static_cast<double>(m))));
  }
  return total / ds.size();
}

Outcome criterion_a9a() {
  const Dataset ds = load_libsvm(std::string(SKETCHY_DATA_DIR) + "/a9a");
  SweepProblem p;
  p.events = logistic_events(ds);
  p.dim = ds.dim;
  p.base.sketch_size = 10;
  p.comparator = offline_comparator(p.events, ConstraintSet()).x;
  const std::vector<std::string> methods = {"ogd", "diag_adagrad", "s_adagrad", "ada_fd", "fd_son"};
  const Leaderboard lb = sweep(p, methods, SweepGrid::paper(), 1);
  const std::map<std::string, double> reference = {
      {"s_adagrad", 0.333}, {"diag_adagrad", 0.332}, {"ogd", 0.335}, {"ada_fd", 0.354}, {"fd_son", 0.539}};
  Outcome o;
  std::string losses;
  for (const auto& [m, want] : reference) {
    const MethodResult* r = lb.find(m);
    if (!r || !r->best_entry()) {
      o.pass = false;
      losses += m + "=missing ";
      continue;
    }
    const double got = r->best_entry()->average_loss;
    if (std::abs(got - want) > 0.02) o.pass = false;
    losses += m + "=" + fmt("%.4f", got) + "/" + fmt("%.3f", want) + " ";
  }
  const int s_rank = lb.rank_of("s_adagrad");
  const bool son_last = lb.rank_of("fd_son") == static_cast<int>(methods.size());
  // Recompute the S-AdaGrad winner's loss outside the harness.
  const SweepEntry* best = lb.find("s_adagrad")->best_entry();
  const long double replay = replay_average_loss(ds, best->config);
  const bool replay_ok = std::abs(static_cast<double>(replay) - best->average_loss) <= 1e-9;
  o.pass = o.pass && s_rank >= 1 && s_rank <= 3 && son_last && replay_ok;
  o.detail = "loss got/ref " + losses + "| s_adagrad rank " + std::to_string(s_rank) + ", fd_son " +
             (son_last ? "last" : "not last") + ", replay diff " +
             fmt("%.2g", std::abs(static_cast<double>(replay) - best->average_loss));
  return o;
}

// ---------------------------------------------------------------------------
// 5: counterexample stream.

double ls_slope(const std::vector<double>& regret) {
  // log R_t on log t over the last half, positive rounds only.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = regret.size() / 2; i < regret.size(); ++i) {
    if (!(regret[i] > 0)) continue;
    const double x = std::log(static_cast<double>(i + 1)), y = std::log(regret[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome criterion_counterexample() {
  CounterexampleOptions opts;  // r = 8, l = 4, T = 20000, 10 seeds
  opts.methods = {"s_adagrad"};
  const CounterexampleReport rep = counterexample_run(opts);
  const CounterexampleMethod* s = rep.find("s_adagrad");

  // Independent replay per seed: tail rho from a bare sketch, regret of
  // S-AdaGrad against the closed-form ball comparator, own slope fit.
  double tail_sum = 0.0, slope_sum = 0.0, max_rho_ratio = 0.0;
  for (int seed = 0; seed < opts.seeds; ++seed) {
    const auto stream = CounterexampleStream::make(opts.dim, opts.support, opts.horizon, opts.seed + seed);
    const auto grads = stream.gradients();
    FdSketch sketch(opts.dim, opts.sketch_size);
    double tail = 0.0;
    int count = 0;
    for (std::size_t t = 0; t < grads.size(); ++t) {
      const double rho = sketch.update(grads[t]);
      if (static_cast<double>(t + 1) >= std::ceil(stream.warmup())) tail += rho, ++count;
    }
    tail_sum += tail / count;
    max_rho_ratio = std::max(max_rho_ratio, sketch.escaped_mass() * opts.sketch_size / opts.horizon);

    Vector sum = Vector::Zero(opts.dim);
    for (const Vector& g : grads) sum += g;
    const Vector comparator = -opts.ball_radius * sum / sum.norm();
    SketchyAdaGrad opt(opts.dim, opts.sketch_size, opts.ball_radius * std::sqrt(2.0),
                       ConstraintSet::l2_ball(opts.ball_radius));
    std::vector<double> regret;
    double r = 0.0;
    for (const Vector& g : grads) {
      r += g.dot(opt.iterate() - comparator);
      regret.push_back(r);
      opt.step(g);
    }
    slope_sum += ls_slope(regret);
  }
  const double tail_mean = tail_sum / opts.seeds;
  const double slope = slope_sum / opts.seeds;
  const bool rho_ok = tail_mean >= rep.rho_threshold;
  const bool slope_ok = slope >= 0.4 && slope <= 0.6;
  const bool agree = std::abs(tail_mean - rep.mean_tail_rho) <= 1e-12 && s && std::abs(slope - s->mean_slope) <= 1e-3;
  Outcome o;
  o.pass = rho_ok && slope_ok && agree;
  o.detail = "tail-mean rho " + fmt("%.4f", tail_mean) + (rho_ok ? " >= " : " < ") +
             fmt("%.4f", rep.rho_threshold) + " (trace ceiling l*rho/T " + fmt("%.4f", max_rho_ratio) +
             " <= 1); s_adagrad slope " + fmt("%.3f", slope) + (slope_ok ? " in" : " outside") +
             " [0.4, 0.6]; harness agrees: " + (agree ? "yes" : "no");
  // Only the rho clause is a known failure.
  if (!slope_ok || !agree) o.detail += " [unexpected]";
  return o;
}

// ---------------------------------------------------------------------------
// 7: intrinsic dimension Monte Carlo.

Outcome criterion_intrinsic() {
  MonteCarloOptions a;
  a.outer_dim = 1024;
  a.inner_dim = 1;
  a.terms = 10000;
  a.beta2 = 0.999;
  a.trials = 5;
  const MonteCarloResult ra = intrinsic_dim_montecarlo(a);
  MonteCarloOptions b = a;
  b.inner_dim = 64;
  b.trials = 3;
  const MonteCarloResult rb = intrinsic_dim_montecarlo(b);

  // One independent trial: dense weighted Gram matrix and Eigen's solver.
  Rng rng(777);
  Matrix x = rng.normal_matrix(1024, 10000);
  for (int i = 0; i < 10000; ++i) x.col(i) *= std::pow(0.999, 0.5 * i);
  Matrix m(1024, 1024);
  m.setZero();
  m.selfadjointView<Eigen::Lower>().rankUpdate(x);
  m = m.selfadjointView<Eigen::Lower>();
  const Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const double oracle = m.trace() / es.eigenvalues().maxCoeff();

  Outcome o;
  const bool ok_a = ra.mean >= 319 && ra.mean <= 330;
  const bool ok_b = rb.mean >= 855 && rb.mean <= 869;
  const bool ok_oracle = oracle >= 314 && oracle <= 335;
  o.pass = ok_a && ok_b && ok_oracle;
  o.detail = "inner 1: " + fmt("%.2f", ra.mean) + " in [319, 330]; inner 64: " + fmt("%.2f", rb.mean) +
             " in [855, 869]; independent inner-1 trial " + fmt("%.2f", oracle);
  return o;
}

// ---------------------------------------------------------------------------
// 8: epoch AdaGrad.

double quadrature_error_term(const Matrix& g, const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const Vector lambda = es.eigenvalues();
  const Matrix at = es.eigenvectors().transpose() * a * es.eigenvectors();
  auto integrand = [&](double tau) {
    Vector w(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) w(i) = std::exp(-tau * std::sqrt(lambda(i))) / std::sqrt(lambda(i));
    const Matrix ma = w.asDiagonal() * at;
    return (ma * ma).trace();
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(integrand, 1e-12);
}

Outcome criterion_epoch() {
  Rng root(20260808);
  // Every round refreshed versus an Eigen replay of full AdaGrad.
  double worst_full = 0.0;
  for (int c = 0; c < 20; ++c) {
    Rng rng = root.split(static_cast<std::uint64_t>(c));
    const int d = 2 + static_cast<int>(rng.below(7));
    const double delta = 0.1 + rng.uniform();
    const double eta = 0.1 + rng.uniform();
    EpochAdaGrad epoch(delta * Matrix::Identity(d, d), eta, EpochSchedule::every(1));
    Matrix acc = delta * Matrix::Identity(d, d);
    Vector x = Vector::Zero(d);
    for (int t = 0; t < 60; ++t) {
      const Vector g = rng.normal_vector(d);
      epoch.step(g);
      acc += g * g.transpose();
      x -= eta * oracle_power(acc, -0.5) * g;
      worst_full = std::max(worst_full, (epoch.iterate() - x).cwiseAbs().maxCoeff() / std::max(1.0, x.cwiseAbs().maxCoeff()));
    }
  }

  // Skip-10 against per-round refresh on stochastic linear streams, d = 5.
  double worst_ratio = 0.0;
  double worst_eps_rel = 0.0, min_eps = std::numeric_limits<double>::infinity();
  int epochs_checked = 0;
  for (int c = 0; c < 20; ++c) {
    Rng rng = root.split(static_cast<std::uint64_t>(100 + c));
    const int d = 5, n = 200;
    const Vector mean = rng.normal_vector(d) * 0.5;
    std::vector<Vector> grads;
    for (int t = 0; t < n; ++t) grads.push_back(mean + rng.normal_vector(d));
    const auto ball = ConstraintSet::l2_ball(1.0);
    const double eta = 2.0 / std::sqrt(2.0);
    const Matrix g0 = 1e-2 * Matrix::Identity(d, d);
    EpochAdaGrad every(g0, eta, EpochSchedule::every(1), ball);
    EpochAdaGrad skip(g0, eta, EpochSchedule::every(10), ball);
    Vector sum = Vector::Zero(d);
    for (const Vector& g : grads) sum += g;
    const Vector comparator = -sum / sum.norm();
    double r_every = 0.0, r_skip = 0.0;
    Matrix acc = g0, at_point = g0;
    for (int t = 1; t <= n; ++t) {
      const Vector& g = grads[static_cast<std::size_t>(t - 1)];
      r_every += g.dot(every.iterate() - comparator);
      r_skip += g.dot(skip.iterate() - comparator);
      every.step(g);
      skip.step(g);
      acc += g * g.transpose();
      if (t % 10 == 0) {
        const double want = quadrature_error_term(at_point, acc - at_point);
        const double got = skip.epoch_errors()[static_cast<std::size_t>(epochs_checked % 20)];
        worst_eps_rel = std::max(worst_eps_rel, std::abs(got - want) / std::abs(want));
        min_eps = std::min(min_eps, got);
        at_point = acc;
        ++epochs_checked;
      }
    }
    worst_ratio = std::max(worst_ratio, r_skip / r_every);
  }
  Outcome o;
  o.pass = worst_full <= 1e-10 && worst_ratio <= 2.0 && min_eps >= -1e-10 && worst_eps_rel <= 1e-6;
  o.detail = "every-round vs full AdaGrad " + fmt("%.2g", worst_full) + " (<= 1e-10); worst skip-10/per-round regret " +
             fmt("%.3f", worst_ratio) + " (<= 2); " + std::to_string(epochs_checked) + " epoch terms, min " +
             fmt("%.3g", min_eps) + ", vs quadrature " + fmt("%.2g", worst_eps_rel) + " rel (<= 1e-6)";
  return o;
}

// ---------------------------------------------------------------------------
// 9: Sketchy Shampoo.

Outcome criterion_shampoo() {
  Rng root(20260909);
  double worst_dense = 0.0, worst_lower = 0.0, worst_upper = 0.0;
  int low_rank_runs = 0;
  for (int c = 0; c < 100; ++c) {
    Rng rng = root.split(static_cast<std::uint64_t>(c));
    const int m = 2 + static_cast<int>(rng.below(7)), n = 2 + static_cast<int>(rng.below(7));
    const int lm = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - 1)));
    const int ln = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    const double eps = std::array<double, 3>{1e-8, 1e-3, 1.0}[rng.below(3)];
    const double eta = 0.1 + rng.uniform();
    const bool low_rank = c % 2 == 0;
    const int k = std::min(lm, ln) - 1;
    const Matrix u = testing::random_orthonormal(rng, m, std::min(k, m));
    const Matrix v = testing::random_orthonormal(rng, n, std::min(k, n));
    SketchyShampoo opt(m, n, lm, ln, eta, eps);
    Matrix l = Matrix::Zero(m, m), r = Matrix::Zero(n, n), x = Matrix::Zero(m, n);
    for (int t = 0; t < 30; ++t) {
      const Matrix g = low_rank ? Matrix(u * rng.normal_vector(k) * (v * rng.normal_vector(k)).transpose())
                                : rng.normal_matrix(m, n);
      opt.step(g);
      l += g * g.transpose();
      r += g.transpose() * g;
      if (low_rank) {
        x -= eta * oracle_power(l + eps * Matrix::Identity(m, m), -0.25) * g *
             oracle_power(r + eps * Matrix::Identity(n, n), -0.25);
        worst_dense = std::max(worst_dense, max_abs(opt.iterate_matrix() - x) / (1.0 + max_abs(x)));
      }
      Matrix l_eps = l, r_eps = r;
      l_eps.diagonal().array() += eps;
      r_eps.diagonal().array() += eps;
      worst_upper = std::min({worst_upper, oracle_min_eig(opt.left_preconditioner().dense() - l_eps),
                              oracle_min_eig(opt.right_preconditioner().dense() - r_eps)});
      worst_lower = std::min({worst_lower, oracle_min_eig(l - opt.left().covariance()),
                              oracle_min_eig(r - opt.right().covariance())});
    }
    if (low_rank) ++low_rank_runs;
  }
  Outcome o;
  o.pass = worst_dense <= 1e-6 && worst_upper >= -1e-7 && worst_lower >= -1e-7;
  o.detail = "100 runs; " + std::to_string(low_rank_runs) + " low-rank runs vs dense Shampoo " +
             fmt("%.2g", worst_dense) + " (<= 1e-6); min eig(Ltilde/Rtilde - sum - eps I) " +
             fmt("%.2g", worst_upper) + ", min eig(sum - Lbar/Rbar) " + fmt("%.2g", worst_lower) + " (>= -1e-7)";
  return o;
}

// ---------------------------------------------------------------------------
// 10: numerical kernels.

// Own weighted projection: bisection on nu in Eigen's eigenbasis.
Vector oracle_projection(const Matrix& h, const Vector& y, const Vector& c, double r) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector lam = es.eigenvalues().cwiseMax(0.0);
  const Vector z = es.eigenvectors().transpose() * (y - c);
  const double top = lam.maxCoeff();
  auto at = [&](double nu) {
    Vector w(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) w(i) = lam(i) > 1e-13 * top ? lam(i) / (lam(i) + nu) * z(i) : 0.0;
    return w;
  };
  // Null-space components cost nothing, so start from the range part.
  if ((y - c).norm() <= r) return y;
  if (at(0.0).norm() <= r) return c + es.eigenvectors() * at(0.0);
  double lo = 0.0, hi = 1.0;
  while (at(hi).norm() > r) hi *= 2;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (at(mid).norm() > r ? lo : hi) = mid;
  }
  return c + es.eigenvectors() * at(hi);
}

Outcome criterion_kernels() {
  Rng root(20261010);
  std::vector<std::string> failures;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  // Eigendecomposition residuals.
  double orth = 0.0, recon = 0.0, vs_eigen = 0.0;
  for (int c = 0; c < 300; ++c) {
    Rng rng = root.split(static_cast<std::uint64_t>(c));
    const int d = 1 + static_cast<int>(rng.below(16));
    Matrix m = testing::random_symmetric(rng, d);
    if (c % 3 == 0 && d > 2) {  // repeated eigenvalues
      const Matrix q = testing::random_orthonormal(rng, d, d);
      Vector lam = Vector::Ones(d);
      lam.head(d / 2).setConstant(3.0);
      m = q * lam.asDiagonal() * q.transpose();
      m = 0.5 * (m + m.transpose()).eval();
    }
    const SymEig e = sym_eig(m);
    orth = std::max(orth, max_abs(e.vectors.transpose() * e.vectors - Matrix::Identity(d, d)));
    recon = std::max(recon, max_abs(e.reconstruct() - m) / (1.0 + max_abs(m)));
    vs_eigen = std::max(vs_eigen, (e.values - oracle_eigenvalues(m)).cwiseAbs().maxCoeff() / (1.0 + max_abs(m)));
  }
  check(orth <= 1e-10, "eig orthogonality");
  check(recon <= 1e-8, "eig reconstruction");
  check(vs_eigen <= 1e-10, "eigenvalues vs Eigen");

  // Matrix powers.
  double sq = 0.0, proj = 0.0;
  for (int c = 0; c < 100; ++c) {
    Rng rng = root.split(static_cast<std::uint64_t>(1000 + c));
    const int d = 1 + static_cast<int>(rng.below(10));
    const Matrix pd = testing::random_spd(rng, d);
    const Matrix half = psd_power(sym_eig(pd), 0.5, false);
    sq = std::max(sq, max_abs(half * half - pd) / max_abs(pd));
    const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
    const Matrix q = testing::random_orthonormal(rng, d, rank);
    Vector lam(rank);
    for (int i = 0; i < rank; ++i) lam(i) = std::pow(10.0, 2.0 * rng.uniform() - 1.0);
    const Matrix low = q * lam.asDiagonal() * q.transpose();
    const Matrix inv = psd_power(sym_eig(low), -0.5, true);
    proj = std::max(proj, max_abs(inv * low * inv - q * q.transpose()));
  }
  check(sq <= 1e-8, "sqrt squared");
  check(proj <= 1e-8, "pseudo-inverse root projector");
  const Matrix d41 = Vector((Vector(2) << 4.0, 0.0).finished()).asDiagonal();
  check(max_abs(psd_power(sym_eig(d41), -0.5, true) - Matrix(Vector((Vector(2) << 0.5, 0.0).finished()).asDiagonal())) <= 1e-15,
        "diag(4,0)^-1/2");
  const Matrix d161 = Vector((Vector(2) << 16.0, 1.0).finished()).asDiagonal();
  check(max_abs(psd_power(sym_eig(d161), -0.25, false) - Matrix(Vector((Vector(2) << 0.5, 1.0).finished()).asDiagonal())) <= 1e-15,
        "diag(16,1)^-1/4");

  // Lyapunov residuals, with the square root taken by Eigen.
  double lyap = 0.0;
  for (int c = 0; c < 100; ++c) {
    Rng rng = root.split(static_cast<std::uint64_t>(2000 + c));
    const int d = 1 + static_cast<int>(rng.below(10));
    const Matrix x = testing::random_spd(rng, d);
    const Matrix delta = testing::random_symmetric(rng, d);
    const Matrix s = lyapunov_solve(x, delta);
    const Matrix root_x = oracle_power(x, 0.5);
    lyap = std::max(lyap, max_abs(root_x * s + s * root_x - delta) / (1.0 + max_abs(delta)));
  }
  check(lyap <= 1e-10, "Lyapunov residual");

  // Logistic gradients against central differences, h = 1e-5.
  const Dataset syn = synthetic_logistic(SyntheticSpec::parse("logistic:n=500,d=12,seed=5"));
  const Dataset a9a = load_libsvm(std::string(SKETCHY_DATA_DIR) + "/a9a");
  double fd_rel = 0.0;
  Rng rng_fd = root.split(3000);
  for (int i = 0; i < 1000; ++i) {
    const Dataset& ds = i % 2 ? a9a : syn;
    const std::size_t row = rng_fd.below(ds.size());
    const LossEvent e = logistic_event(ds, row);
    const Vector x = rng_fd.normal_vector(ds.dim) * (i % 2 ? 0.3 : 1.0);
    const Vector g = loss_gradient(e, x);
    Vector fd(ds.dim);
    for (int j = 0; j < ds.dim; ++j) {
      Vector xp = x, xm = x;
      xp(j) += 1e-5;
      xm(j) -= 1e-5;
      fd(j) = (loss_value(e, xp) - loss_value(e, xm)) / 2e-5;
    }
    fd_rel = std::max(fd_rel, (g - fd).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff());
  }
  check(fd_rel <= 1e-6, "logistic finite differences");

  // Projection KKT, recomputed from the returned point.
  double kkt = 0.0, obj_gap = 0.0, scan_gain = 0.0;
  for (int c = 0; c < 200; ++c) {
    Rng rng = root.split(static_cast<std::uint64_t>(4000 + c));
    const int d = 2 + static_cast<int>(rng.below(9));
    const bool singular = c % 4 == 3;
    Matrix h;
    if (singular) {
      const Matrix q = testing::random_orthonormal(rng, d, d - 1);
      h = q * q.transpose() * (1.0 + rng.uniform());
    } else {
      h = testing::random_spd(rng, d, 0.05);
    }
    const Vector center = rng.normal_vector(d) * 0.3;
    const Vector y = center + rng.normal_vector(d) * 3.0;
    const double r = 0.2 + rng.uniform();
    const Projection p =
        project_weighted(y, SpectralOperator::from_eig(sym_eig(h)), ConstraintSet::l2_ball(r, center));
    const Vector want = oracle_projection(h, y, center, r);
    const double f_got = (y - p.x).dot(h * (y - p.x)), f_want = (y - want).dot(h * (y - want));
    obj_gap = std::max(obj_gap, (f_got - f_want) / (1.0 + f_want));
    check((p.x - center).norm() <= r * (1.0 + 1e-12), "projection feasibility");
    if (!singular && (y - center).norm() > r) {
      // Stationarity H (x - y) + nu (x - c) = 0 with the best nu >= 0.
      const Vector hx = h * (p.x - y), xc = p.x - center;
      const double nu = std::max(0.0, -hx.dot(xc) / xc.squaredNorm());
      const double scale = testing::oracle_max_eig(h) + nu;
      kkt = std::max(kkt, (hx + nu * xc).norm() / scale / r + std::abs(xc.norm() - r) / r);
    }
    if (d == 2 && !singular) {
      for (int i = 0; i < 10000; ++i) {
        const double a = 2.0 * std::numbers::pi * i / 10000;
        const Vector z = center + r * (Vector(2) << std::cos(a), std::sin(a)).finished();
        scan_gain = std::max(scan_gain, f_got - (y - z).dot(h * (y - z)));
      }
    }
  }
  check(kkt <= 1e-10, "projection KKT");
  check(obj_gap <= 1e-9, "projection vs bisection oracle");
  check(scan_gain <= 1e-8, "projection boundary scan");

  Outcome o;
  o.pass = failures.empty();
  o.detail = "eig orth " + fmt("%.1e", orth) + ", recon " + fmt("%.1e", recon) + ", sqrt^2 " + fmt("%.1e", sq) +
             ", projector " + fmt("%.1e", proj) + ", Lyapunov " + fmt("%.1e", lyap) + ", logistic FD " +
             fmt("%.1e", fd_rel) + ", KKT/r " + fmt("%.1e", kkt) + ", scan gain " + fmt("%.1e", scan_gain);
  for (const auto& f : failures) o.detail += " [failed: " + f + "]";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace sketchy

int main(int argc, char** argv) {
  using namespace sketchy;
  const std::vector<Criterion> all = {
      {1, "escaped-mass bound", criterion_escaped_mass},
      {2, "sandwich identity", criterion_sandwich},
      {3, "exact recovery", criterion_recovery},
      {4, "a9a sweep", criterion_a9a},
      {5, "counterexample stream", criterion_counterexample},
      {6, "regret bound", criterion_regret_bound},
      {7, "intrinsic dimension", criterion_intrinsic},
      {8, "epoch AdaGrad", criterion_epoch},
      {9, "Sketchy Shampoo", criterion_shampoo},
      {10, "numerical kernels", criterion_kernels},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int unexpected = 0;
  for (const Criterion& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto known = kKnownFailures.find(c.id);
    const bool expected_fail = !o.pass && known != kKnownFailures.end() &&
                               o.detail.find("[unexpected]") == std::string::npos;
    std::printf("%s %2d %s: %s (%.1f s)%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                expected_fail ? (" | known: " + known->second).c_str() : "");
    std::fflush(stdout);
    if (!o.pass && !expected_fail) ++unexpected;
  }
  return unexpected;
}
