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

#include "sketchy/comparator.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <variant>

#include <Eigen/Cholesky>

namespace sketchy {
namespace {

struct MeanLogistic {
  const std::vector<LossEvent>& events;
  int dim;

  double value(const Vector& x) const {
    double s = 0.0;
    for (const LossEvent& e : events) s += loss_value(e, x);
    return s / static_cast<double>(events.size());
  }

  double value_grad(const Vector& x, Vector* g) const {
    g->setZero(dim);
    double s = 0.0;
    for (const LossEvent& e : events) {
      const auto& l = std::get<LogisticLoss>(e);
      const double m = l.margin(x);
      s += softplus(-m);
      const double coef = -l.label * sigmoid(-m);
      for (std::size_t k = 0; k < l.index.size(); ++k) (*g)(l.index[k]) += coef * l.value[k];
    }
    const double n = static_cast<double>(events.size());
    *g /= n;
    return s / n;
  }

  Matrix hessian(const Vector& x) const {
    Matrix h = Matrix::Zero(dim, dim);
    for (const LossEvent& e : events) {
      const auto& l = std::get<LogisticLoss>(e);
      const double p = sigmoid(l.margin(x));
      const double w = p * (1.0 - p);
      for (std::size_t a = 0; a < l.index.size(); ++a)
        for (std::size_t b = 0; b < l.index.size(); ++b)
          h(l.index[a], l.index[b]) += w * l.value[a] * l.value[b];
    }
    return h / static_cast<double>(events.size());
  }
};

ComparatorResult linear_comparator(const std::vector<LossEvent>& events, const ConstraintSet& k) {
  const int d = loss_dim(events.front());
  Vector s = Vector::Zero(d);
  for (const LossEvent& e : events) s += std::get<LinearLoss>(e).g;
  if (!k.is_ball()) {
    if (s.norm() > 0.0)
      throw ComparatorError("linear losses are unbounded below without a bounded constraint set", s.norm());
    ComparatorResult r;
    r.x = Vector::Zero(d);
    return r;
  }
  ComparatorResult r;
  const Vector c = k.center(d);
  const double n = s.norm();
  r.x = n > 0.0 ? Vector(c - (k.radius() / n) * s) : c;
  r.objective = s.dot(r.x);
  return r;
}

ComparatorResult logistic_newton(const MeanLogistic& f, double tol, int max_iterations) {
  ComparatorResult r;
  Vector x = Vector::Zero(f.dim);
  Vector g;
  double fx = f.value_grad(x, &g);
  for (r.iterations = 0; r.iterations < max_iterations && g.norm() > tol; ++r.iterations) {
    Matrix h = f.hessian(x);
    h.diagonal().array() += 1e-10;
    Vector p = -h.ldlt().solve(g);
    if (!p.allFinite() || p.dot(g) >= 0.0) p = -g;  // fall back to steepest descent
    double step = 1.0;
    Vector xn, gn;
    double fn = 0.0;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      xn = x + step * p;
      fn = f.value_grad(xn, &gn);
      // Near the optimum f is flat to rounding, so a shrinking gradient also
      // counts as progress.
      if (fn <= fx + 1e-4 * step * p.dot(g) || gn.norm() < 0.5 * g.norm()) break;
    }
    if (!(fn <= fx) && !(gn.norm() < g.norm())) break;
    x = std::move(xn);
    g = std::move(gn);
    fx = fn;
  }
  r.x = std::move(x);
  r.gradient_norm = g.norm();
  // f - f* <= ||g||^2 / (2 mu) with mu the curvature at the solution.
  Matrix h = f.hessian(r.x);
  const double mu = sym_eig(0.5 * (h + h.transpose())).values.minCoeff();
  r.suboptimality_bound = mu > 0.0 ? r.gradient_norm * r.gradient_norm / (2.0 * mu)
                                   : std::numeric_limits<double>::infinity();
  return r;
}

ComparatorResult logistic_projected(const MeanLogistic& f, const ConstraintSet& k, double tol,
                                    int max_iterations) {
  ComparatorResult r;
  Vector x = k.center(f.dim);
  Vector g;
  double fx = f.value_grad(x, &g);
  double step = 1.0;
  double mapping = std::numeric_limits<double>::infinity();
  for (r.iterations = 0; r.iterations < max_iterations * 20; ++r.iterations) {
    Vector xn, gn;
    double fn = 0.0;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      xn = project_euclidean(x - step * g, k);
      fn = f.value_grad(xn, &gn);
      const Vector dx = xn - x;
      if (fn <= fx + g.dot(dx) + dx.squaredNorm() / (2.0 * step)) break;
    }
    mapping = (x - xn).norm() / step;
    x = std::move(xn);
    g = std::move(gn);
    fx = fn;
    if (mapping <= tol) break;
    step *= 2.0;
  }
  r.x = std::move(x);
  r.gradient_norm = mapping;
  r.suboptimality_bound = mapping * k.diameter();
  return r;
}

}  // namespace

ComparatorResult offline_comparator(const std::vector<LossEvent>& events, const ConstraintSet& k,
                                    double tol, int max_iterations) {
  if (events.empty()) throw std::invalid_argument("offline_comparator: no events");
  const bool linear = std::holds_alternative<LinearLoss>(events.front());
  for (const LossEvent& e : events)
    if (std::holds_alternative<LinearLoss>(e) != linear)
      throw std::invalid_argument("offline_comparator: events mix linear and logistic losses");
  if (linear) return linear_comparator(events, k);

  const MeanLogistic f{events, loss_dim(events.front())};
  ComparatorResult r = logistic_newton(f, tol, max_iterations);
  if (k.is_ball() && !k.contains(r.x, 0.0)) r = logistic_projected(f, k, tol, max_iterations);
  if (!(r.gradient_norm <= tol)) {
    std::ostringstream os;
    os << "offline comparator did not converge: gradient norm " << r.gradient_norm << " after "
       << r.iterations << " iterations";
    throw ComparatorError(os.str(), r.gradient_norm);
  }
  r.objective = f.value(r.x) * static_cast<double>(events.size());
  return r;
}

}  // namespace sketchy
