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

#include "sketchy/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sketchy/constraint.hpp"
#include "sketchy/fd_sketch.hpp"
#include "sketchy/linalg.hpp"
#include "sketchy/optimizer.hpp"
#include "sketchy/rng.hpp"
#include "sketchy/sketch_checks.hpp"
#include "sketchy/synthetic.hpp"

#ifndef SKETCHY_INJECT_FAULT
#define SKETCHY_INJECT_FAULT 0
#endif

namespace sketchy {
namespace {

// The negative-control build under-compensates the sketch, which breaks the
// upper sandwich bounds the suites check.
constexpr double kRhoScale = SKETCHY_INJECT_FAULT ? 0.5 : 1.0;

class Suite {
 public:
  Suite(std::string name, const VerifyOptions& o, int default_cases)
      : o_(o), start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
    result_.cases = o.cases > 0 ? o.cases : default_cases;
  }

  int cases() const { return result_.cases; }

  Rng rng(int c) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (char ch : result_.name) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    return Rng(o_.seed).split(h).split(static_cast<std::uint64_t>(c));
  }

  void at_most(const std::string& metric, double value, double limit, int c) {
    record(metric, value, limit, true, c, !(value <= limit));
  }
  void at_least(const std::string& metric, double value, double limit, int c) {
    record(metric, value, limit, false, c, !(value >= limit));
  }

  SuiteResult finish() {
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  void record(const std::string& metric, double value, double limit, bool upper, int c, bool bad) {
    auto it = std::find_if(result_.metrics.begin(), result_.metrics.end(),
                           [&](const SuiteResult::Metric& m) { return m.name == metric; });
    if (it == result_.metrics.end()) {
      result_.metrics.push_back({metric, value, limit, upper});
    } else if (std::isnan(value) || (upper ? value > it->worst : value < it->worst)) {
      it->worst = value;
    }
    if (bad && result_.passed) {
      result_.passed = false;
      std::ostringstream os;
      os << metric << " = " << value << (upper ? " exceeds " : " is below ") << limit << " (seed "
         << o_.seed << ", case " << c << ")";
      result_.failure = os.str();
    }
  }

  VerifyOptions o_;
  SuiteResult result_;
  std::chrono::steady_clock::time_point start_;
};

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Matrix random_symmetric(Rng& rng, int d) {
  const Matrix a = rng.normal_matrix(d, d);
  return 0.5 * (a + a.transpose());
}

double min_eig(const Matrix& m) {
  const SymEig e = sym_eig(0.5 * (m + m.transpose()));
  return e.values(e.dim() - 1);
}

/// Gradients with a decaying spectrum so deflation actually happens.
std::vector<Vector> decaying_stream(Rng& rng, int d, int rounds) {
  Vector scale(d);
  const double decay = 0.3 + 0.7 * rng.uniform();
  for (int i = 0; i < d; ++i) scale(i) = std::pow(decay, i);
  const Matrix q = orthonormal_columns(d, d, rng);
  std::vector<Vector> out;
  for (int t = 0; t < rounds; ++t) out.push_back(q * scale.cwiseProduct(rng.normal_vector(d)));
  return out;
}

Matrix tilde_of(const FdSketch& s, double ridge = 0.0) {
  Matrix m = s.covariance();
  m.diagonal().array() += kRhoScale * s.escaped_mass() + ridge;
  return m;
}

SuiteResult suite_linalg(const VerifyOptions& o) {
  Suite s("linalg", o, 300);
  for (int c = 0; c < s.cases(); ++c) {
    Rng rng = s.rng(c);
    const int d = uniform_int(rng, 1, 32);
    const Matrix m = random_symmetric(rng, d);
    const SymEig e = sym_eig(m);
    s.at_most("eig_orthogonality", max_abs(e.vectors.transpose() * e.vectors - Matrix::Identity(d, d)), 1e-10, c);
    s.at_most("eig_reconstruction", max_abs(e.reconstruct() - m) / (1.0 + max_abs(m)), 1e-8, c);

    const int k = uniform_int(rng, 1, std::min(d, 16));
    const Matrix b = rng.normal_matrix(k, k);
    Matrix pd = b * b.transpose();
    pd.diagonal().array() += 0.1;
    const SymEig pe = sym_eig(pd);
    const Matrix root = psd_power(pe, 0.5, false);
    s.at_most("sqrt_squared", max_abs(root * root - pd) / max_abs(pd), 1e-8, c);

    // Rank-deficient PSD with a known range: A^{+1/2} A A^{+1/2} = Q Q^T.
    const int rank = uniform_int(rng, 1, k);
    const Matrix q = orthonormal_columns(k, rank, rng);
    Vector spread(rank);
    for (int i = 0; i < rank; ++i) spread(i) = std::pow(10.0, 2.0 * rng.uniform() - 1.0);
    const Matrix psd = q * spread.asDiagonal() * q.transpose();
    const Matrix inv_root = psd_power(sym_eig(psd), -0.5, true);
    s.at_most("pseudo_projector", max_abs(inv_root * psd * inv_root - q * q.transpose()), 1e-8, c);

    const Matrix delta = random_symmetric(rng, k);
    const Matrix sol = lyapunov_solve(pd, delta);
    s.at_most("lyapunov_residual", max_abs(root * sol + sol * root - delta) / (1.0 + max_abs(delta)), 1e-10, c);
    s.at_least("epoch_error_term", epoch_error_term(pd, psd), -1e-10, c);
  }
  return s.finish();
}

SuiteResult suite_escaped_mass(const VerifyOptions& o) {
  Suite s("escaped_mass", o, 300);
  const double betas[] = {1.0, 0.99, 0.9};
  for (int c = 0; c < s.cases(); ++c) {
    Rng rng = s.rng(c);
    const int d = uniform_int(rng, 2, 16);
    const int ell = uniform_int(rng, 2, d);
    const double beta2 = betas[rng.below(3)];
    const auto grads = decaying_stream(rng, d, uniform_int(rng, 1, 60));
    FdSketch sketch(d, ell, beta2);
    for (const Vector& g : grads) sketch.update(g);
    s.at_most("rho_minus_bound", sketch.escaped_mass() - escaped_mass_bound(grads, ell, beta2), 1e-8, c);

    // Regret bound of the sketched method with eta = D / sqrt(2).
    const double r = 0.5 + 2.0 * rng.uniform();
    const ConstraintSet ball = ConstraintSet::l2_ball(r);
    SketchyAdaGrad opt(d, ell, SketchyAdaGrad::default_eta(ball), ball);
    const auto linear = decaying_stream(rng, d, uniform_int(rng, 1, 60));
    Vector sum = Vector::Zero(d);
    double loss = 0.0;
    Matrix g_total = Matrix::Zero(d, d);
    for (const Vector& g : linear) {
      loss += g.dot(opt.iterate());
      opt.step(g);
      sum += g;
      g_total += g * g.transpose();
    }
    const double regret = loss + r * sum.norm();
    const double diameter = ball.diameter();
    const SymEig ge = sym_eig(g_total);
    const double tr_root = ge.values.cwiseMax(0.0).cwiseSqrt().sum();
    const double bound = diameter * (std::sqrt(2.0) * tr_root + d * std::sqrt(kRhoScale * opt.escaped_mass() / 2.0));
    s.at_most("regret_minus_bound", regret - bound, 1e-6, c);
  }
  return s.finish();
}

SuiteResult suite_sandwich(const VerifyOptions& o) {
  Suite s("sandwich", o, 100);
  for (int c = 0; c < s.cases(); ++c) {
    Rng rng = s.rng(c);
    const int d = uniform_int(rng, 2, 10);
    const int ell = uniform_int(rng, 2, d);
    const auto grads = decaying_stream(rng, d, uniform_int(rng, 1, 80));
    for (FdMethod method : {FdMethod::kFactored, FdMethod::kDense}) {
      FdSketch sketch(d, ell, 1.0, method);
      sketch.set_recording(true);
      Matrix g = Matrix::Zero(d, d), deflated = Matrix::Zero(d, d), prev = Matrix::Zero(d, d);
      for (const Vector& v : grads) {
        sketch.update(v);
        g += v * v.transpose();
        const DeflationRecord& rec = sketch.deflations().back();
        deflated += rec.rho * rec.complement_projector();
        const Matrix bar = sketch.covariance();
        const Matrix tilde = tilde_of(sketch);
        s.at_least("lambda_min(G - Gbar)", min_eig(g - bar), -1e-8, c);
        s.at_least("lambda_min(Gtilde - G)", min_eig(tilde - g), -1e-8, c);
        s.at_least("lambda_min(Gtilde_t - Gtilde_t-1)", min_eig(tilde - prev), -1e-8, c);
        s.at_most("identity_residual", max_abs(tilde - g - deflated) / (1.0 + max_abs(g)), 1e-7, c);
        s.at_most("last_column", sketch.factor().col(ell - 1).cwiseAbs().maxCoeff(), 0.0, c);
        prev = tilde;
      }
    }
  }
  return s.finish();
}

SuiteResult suite_ewfd(const VerifyOptions& o) {
  Suite s("ewfd", o, 100);
  const double betas[] = {1.0, 0.99, 0.9};
  for (int c = 0; c < s.cases(); ++c) {
    Rng rng = s.rng(c);
    const int d = uniform_int(rng, 2, 10);
    const int ell = uniform_int(rng, 2, d);
    const double beta2 = betas[rng.below(3)];
    const auto grads = decaying_stream(rng, d, uniform_int(rng, 1, 80));
    FdSketch sketch(d, ell, beta2);
    Matrix g = Matrix::Zero(d, d);
    for (const Vector& v : grads) {
      sketch.update(v);
      g = beta2 * g + v * v.transpose();
      const Matrix diff = g - sketch.covariance();
      const SymEig e = sym_eig(0.5 * (diff + diff.transpose()));
      const double err = std::max(e.values(0), -e.values(d - 1));
      s.at_most("error_minus_rho", err - kRhoScale * sketch.escaped_mass(), 1e-8, c);
    }
    s.at_most("rho_minus_bound", sketch.escaped_mass() - escaped_mass_bound(g, ell), 1e-8, c);
  }
  return s.finish();
}

/// Every prefix covariance has nonzero spectrum within a ratio `floor`.
bool well_conditioned(const std::vector<Vector>& grads, double floor) {
  Matrix g = Matrix::Zero(grads.front().size(), grads.front().size());
  for (const Vector& v : grads) {
    g += v * v.transpose();
    const SymEig e = sym_eig(g);
    const double top = e.values(0);
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
      const double lambda = e.values(i);
      if (lambda > 1e-12 * top && lambda < floor * top) return false;
    }
  }
  return true;
}

SuiteResult suite_recovery(const VerifyOptions& o) {
  Suite s("recovery", o, 100);
  for (int c = 0; c < s.cases(); ++c) {
    Rng rng = s.rng(c);
    const int d = uniform_int(rng, 2, 10);
    const int ell = uniform_int(rng, 2, d);
    const int rank = uniform_int(rng, 1, ell - 1);
    // Near-degenerate draws (a new gradient almost inside the span of the
    // earlier ones) make any two correct solvers differ by more than 1e-8,
    // so the stream must have a well-conditioned covariance at every prefix.
    std::vector<Vector> grads;
    do grads = low_rank_stream(d, rank, uniform_int(rng, 5, 60), rng);
    while (!well_conditioned(grads, 1e-4));
    const bool ball = rng.below(2) == 1;
    const ConstraintSet k = ball ? ConstraintSet::l2_ball(0.5 + rng.uniform()) : ConstraintSet();
    const double eta = 0.1 + rng.uniform();
    SketchyAdaGrad sketched(d, ell, eta, k);
    FullAdaGrad full(d, eta, 0.0, k);
    double worst = 0.0;
    for (const Vector& g : grads) {
      sketched.step(g);
      full.step(g);
      worst = std::max(worst, (sketched.iterate() - full.iterate()).cwiseAbs().maxCoeff());
    }
    s.at_most("escaped_mass", sketched.escaped_mass(), 0.0, c);
    s.at_most("iterate_gap", worst, 1e-8, c);
  }
  return s.finish();
}

/// KKT residual of x for min ||y - x||_H^2 over ||x - c|| <= r, from the
/// dense weight matrix.
double kkt_residual(const Matrix& h, const Vector& y, const Vector& x, const Vector& c, double r, double nu) {
  const Vector z = x - c;
  const double hmax = std::max(sym_eig(h).values(0), 0.0);
  const double scale = hmax + nu;
  const double stationarity = scale > 0.0 ? (h * (x - y) + nu * z).norm() / scale : 0.0;
  return std::max({std::max(0.0, z.norm() - r), nu > 0.0 ? std::abs(z.norm() - r) : 0.0, stationarity});
}

SuiteResult suite_projection(const VerifyOptions& o) {
  Suite s("projection", o, 200);
  for (int c = 0; c < s.cases(); ++c) {
    Rng rng = s.rng(c);
    const int d = uniform_int(rng, 2, 8);
    const int rank = uniform_int(rng, 1, d);
    const Matrix f = rng.normal_matrix(d, rank);
    const SpectralOperator h = SpectralOperator::from_eig(sym_eig(f * f.transpose()));
    const double r = 0.2 + rng.uniform();
    const ConstraintSet ball = ConstraintSet::l2_ball(r, rng.normal_vector(d) * 0.3);
    const Vector y = ball.center(d) + rng.normal_vector(d) * (1.0 + 3.0 * rng.uniform());
    const Projection p = project_weighted(y, h, ball);
    s.at_most("kkt_residual_over_r", kkt_residual(h.dense(), y, p.x, ball.center(d), r, p.nu) / r, 1e-10, c);
    s.at_most("infeasibility", (p.x - ball.center(d)).norm() - r, 1e-12 * r, c);
    if (d == 2) {
      const Matrix hd = h.dense();
      auto objective = [&](const Vector& x) { return (y - x).dot(hd * (y - x)); };
      const double best = objective(p.x);
      double scan = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 10000; ++i) {
        const double a = 2.0 * M_PI * i / 10000.0;
        const Vector x = ball.center(2) + r * Vector{{std::cos(a), std::sin(a)}};
        scan = std::min(scan, objective(x));
      }
      s.at_least("scan_minus_projection", scan - best, -1e-8, c);
    }
  }
  return s.finish();
}

/// Distance from g to span of the nonzero columns of b (Gram-Schmidt, two
/// passes).
double span_residual(const Matrix& b, const Vector& g) {
  std::vector<Vector> basis;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    Vector v = b.col(j);
    const double n0 = v.norm();
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : basis) v -= q.dot(v) * q;
    if (v.norm() > 1e-12 * n0) basis.push_back(v / v.norm());
  }
  Vector r = g;
  for (int pass = 0; pass < 2; ++pass)
    for (const Vector& q : basis) r -= q.dot(r) * q;
  return r.norm();
}

SuiteResult suite_optim(const VerifyOptions& o) {
  Suite s("optim", o, 100);
  for (int c = 0; c < s.cases(); ++c) {
    Rng rng = s.rng(c);
    const int d = uniform_int(rng, 2, 10);
    const int ell = uniform_int(rng, 2, d);
    const ConstraintSet ball = ConstraintSet::l2_ball(0.5 + rng.uniform());
    SketchyAdaGrad opt(d, ell, 0.1 + rng.uniform(), ball);
    Matrix prev = Matrix::Zero(d, d);
    for (const Vector& g : decaying_stream(rng, d, uniform_int(rng, 1, 80))) {
      opt.step(g);
      const Matrix tilde = tilde_of(opt.sketch());
      s.at_least("lambda_min(Gtilde_t - Gtilde_t-1)", min_eig(tilde - prev), -1e-8, c);
      // range(Gtilde) is everything once mass has escaped, else span(B).
      const double span = opt.escaped_mass() > 0.0 ? 0.0 : span_residual(opt.sketch().factor(), g);
      s.at_most("span_residual", span / g.norm(), 1e-8, c);
      s.at_most("infeasibility", (opt.iterate() - ball.center(d)).norm() - ball.radius(), 1e-8, c);
      s.at_most("kkt_residual_over_r", opt.last_kkt_residual() / ball.radius(), 1e-10, c);
      prev = tilde;
    }
  }
  return s.finish();
}

Matrix dense_power(const Matrix& m, double p) { return psd_power(sym_eig(m), p, false); }

SuiteResult suite_shampoo(const VerifyOptions& o) {
  Suite s("shampoo", o, 100);
  for (int c = 0; c < s.cases(); ++c) {
    Rng rng = s.rng(c);
    const int m = uniform_int(rng, 2, 8), n = uniform_int(rng, 2, 8);
    const int lm = uniform_int(rng, 2, m), ln = uniform_int(rng, 2, n);
    const double eps = std::pow(10.0, -uniform_int(rng, 0, 4));
    const double eta = 0.1 + rng.uniform();
    const int steps = uniform_int(rng, 1, 30);

    // Full-rank stream: sandwich inequalities only.
    SketchyShampoo sh(m, n, lm, ln, eta, eps);
    Matrix l = Matrix::Zero(m, m), r = Matrix::Zero(n, n);
    for (int t = 0; t < steps; ++t) {
      const Matrix g = rng.normal_matrix(m, n);
      sh.step(g);
      l += g * g.transpose();
      r += g.transpose() * g;
      Matrix lt = tilde_of(sh.left(), eps), rt = tilde_of(sh.right(), eps);
      lt.diagonal().array() -= eps;
      rt.diagonal().array() -= eps;
      s.at_least("lambda_min(Ltilde - L - eps I)", min_eig(lt - l), -1e-7, c);
      s.at_least("lambda_min(Rtilde - R - eps I)", min_eig(rt - r), -1e-7, c);
    }

    // Low-rank stream: no deflation, so the trajectory is dense Shampoo's.
    const Matrix u = orthonormal_columns(m, uniform_int(rng, 1, lm - 1), rng);
    const Matrix v = orthonormal_columns(n, uniform_int(rng, 1, ln - 1), rng);
    SketchyShampoo low(m, n, lm, ln, eta, eps);
    Matrix x = Matrix::Zero(m, n);
    Matrix ld = eps * Matrix::Identity(m, m), rd = eps * Matrix::Identity(n, n);
    double gap = 0.0;
    for (int t = 0; t < steps; ++t) {
      const Matrix g = u * rng.normal_matrix(u.cols(), v.cols()) * v.transpose();
      low.step(g);
      ld += g * g.transpose();
      rd += g.transpose() * g;
      x -= eta * dense_power(ld, -0.25) * g * dense_power(rd, -0.25);
      gap = std::max(gap, max_abs(low.iterate_matrix() - x));
    }
    s.at_most("dense_shampoo_gap", gap, 1e-6, c);
  }
  return s.finish();
}

SuiteResult suite_epoch(const VerifyOptions& o) {
  Suite s("epoch", o, 50);
  for (int c = 0; c < s.cases(); ++c) {
    Rng rng = s.rng(c);
    const int d = uniform_int(rng, 2, 6);
    const double delta = 0.01 + rng.uniform();
    const double eta = 0.1 + rng.uniform();
    const ConstraintSet k = rng.below(2) ? ConstraintSet::l2_ball(1.0) : ConstraintSet();
    EpochAdaGrad every(delta * Matrix::Identity(d, d), eta, EpochSchedule::every(1), k);
    EpochAdaGrad skip(delta * Matrix::Identity(d, d), eta, EpochSchedule::every(3), k);
    FullAdaGrad full(d, eta, delta, k);
    double gap = 0.0;
    for (const Vector& g : gaussian_stream(d, uniform_int(rng, 1, 60), rng)) {
      every.step(g);
      skip.step(g);
      full.step(g);
      gap = std::max(gap, (every.iterate() - full.iterate()).cwiseAbs().maxCoeff());
    }
    s.at_most("every_step_gap", gap, 1e-10, c);
    for (double e : skip.epoch_errors()) s.at_least("epoch_error", e, -1e-10, c);
  }
  return s.finish();
}

const std::map<std::string, std::function<SuiteResult(const VerifyOptions&)>>& registry() {
  static const std::map<std::string, std::function<SuiteResult(const VerifyOptions&)>> r = {
      {"linalg", suite_linalg},     {"escaped_mass", suite_escaped_mass},
      {"sandwich", suite_sandwich}, {"ewfd", suite_ewfd},
      {"recovery", suite_recovery}, {"projection", suite_projection},
      {"optim", suite_optim},       {"shampoo", suite_shampoo},
      {"epoch", suite_epoch}};
  return r;
}

}  // namespace

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json m = nlohmann::json::array();
  for (const Metric& x : metrics)
    m.push_back({{"name", x.name}, {"worst", x.worst}, {"limit", x.limit}, {"kind", x.upper ? "max" : "min"}});
  nlohmann::json j{{"suite", name}, {"passed", passed}, {"cases", cases}, {"seconds", seconds}, {"metrics", m}};
  if (!passed) j["failure"] = failure;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"linalg",   "escaped_mass", "sandwich",
                                                 "ewfd",     "recovery",     "projection",
                                                 "optim",    "shampoo",      "epoch"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw std::invalid_argument("unknown verify suite '" + name + "'");
  try {
    return it->second(options);
  } catch (const std::exception& e) {
    SuiteResult res;
    res.name = name;
    res.passed = false;
    res.failure = std::string("exception: ") + e.what() + " (seed " + std::to_string(options.seed) + ")";
    return res;
  }
}

std::vector<SuiteResult> run_suites(const std::string& selector, const VerifyOptions& options) {
  std::vector<std::string> names;
  if (selector == "all") {
    names = suite_names();
  } else {
    std::stringstream ss(selector);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (!registry().count(item)) throw std::invalid_argument("unknown verify suite '" + item + "'");
      names.push_back(item);
    }
    if (names.empty()) throw std::invalid_argument("no verify suite selected");
  }
  std::vector<SuiteResult> out;
  for (const std::string& n : names) out.push_back(run_suite(n, options));
  return out;
}

bool fault_injected() { return SKETCHY_INJECT_FAULT != 0; }

}  // namespace sketchy
