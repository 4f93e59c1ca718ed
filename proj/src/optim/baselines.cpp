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

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sketchy/optimizer.hpp"

namespace sketchy {
namespace {

void require_eta(double eta, const char* who) {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument(std::string(who) + ": eta must be positive");
}

void require_delta(double delta, const char* who) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw std::invalid_argument(std::string(who) + ": delta must be nonnegative");
}

Vector start_point(const ConstraintSet& k, int dim) {
  return k.is_ball() ? k.center(dim) : Vector::Zero(dim);
}

Vector project(Vector y, const SpectralOperator& h, const ConstraintSet& k) {
  if (!k.is_ball()) return y;
  return project_weighted(y, h, k).x;
}

}  // namespace

Ogd::Ogd(int dim, double eta, ConstraintSet k) : eta_(eta), k_(std::move(k)) {
  require_eta(eta, "ogd");
  x_ = start_point(k_, dim);
}

void Ogd::step(const Vector& g) {
  begin_step(g, x_.size());
  const double rate = eta_ / std::sqrt(static_cast<double>(rounds_));
  x_ = project_euclidean(x_ - rate * g, k_);
}

DiagAdaGrad::DiagAdaGrad(int dim, double eta, ConstraintSet k) : eta_(eta), k_(std::move(k)) {
  require_eta(eta, "diag_adagrad");
  x_ = start_point(k_, dim);
  sum_sq_ = Vector::Zero(dim);
}

void DiagAdaGrad::step(const Vector& g) {
  begin_step(g, x_.size());
  sum_sq_.array() += g.array().square();
  Vector y = x_;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (sum_sq_(i) > 0.0) y(i) -= eta_ * g(i) / std::sqrt(sum_sq_(i));
  x_ = k_.is_ball() ? project(std::move(y), SpectralOperator::diagonal(sum_sq_.cwiseSqrt()), k_)
                    : std::move(y);
}

FullAdaGrad::FullAdaGrad(int dim, double eta, double delta, ConstraintSet k)
    : eta_(eta), k_(std::move(k)) {
  require_eta(eta, "full_adagrad");
  require_delta(delta, "full_adagrad");
  x_ = start_point(k_, dim);
  g_ = delta * Matrix::Identity(dim, dim);
}

void FullAdaGrad::set_iterate(const Vector& x) {
  if (x.size() != x_.size()) throw std::invalid_argument("full_adagrad: iterate has the wrong dimension");
  x_ = x;
}

void FullAdaGrad::step(const Vector& g) {
  begin_step(g, x_.size());
  g_.noalias() += g * g.transpose();
  if ((g.array() == 0.0).all()) return;
  const SpectralOperator op = SpectralOperator::from_eig(sym_eig(g_));
  Vector y = x_ - eta_ * op.power(-0.5, true).apply(g);
  x_ = k_.is_ball() ? project(std::move(y), op.power(0.5, true), k_) : std::move(y);
}

std::size_t FullAdaGrad::state_scalars() const {
  return static_cast<std::size_t>(x_.size() + g_.size());
}

AdaFd::AdaFd(int dim, int sketch_size, double eta, double delta, ConstraintSet k)
    : sketch_(dim, sketch_size), eta_(eta), delta_(delta), k_(std::move(k)) {
  require_eta(eta, "ada_fd");
  require_delta(delta, "ada_fd");
  x_ = start_point(k_, dim);
}

void AdaFd::step(const Vector& g) {
  begin_step(g, x_.size());
  sketch_.update(g);
  // (Gbar^{1/2} + delta I) is singular when delta = 0 and the sketch is rank
  // deficient; power(-1, false) rejects that.
  const SpectralOperator h = sketch_.spectrum().power(0.5, false).shifted(delta_);
  Vector y = x_ - eta_ * h.power(-1.0, false).apply(g);
  x_ = project(std::move(y), h, k_);
}

std::size_t AdaFd::state_scalars() const {
  return sketch_.state_scalars() + static_cast<std::size_t>(x_.size());
}

FdSon::FdSon(int dim, int sketch_size, double gamma, double delta, ConstraintSet k)
    : sketch_(dim, sketch_size), gamma_(gamma), delta_(delta), k_(std::move(k)) {
  require_eta(gamma, "fd_son");
  require_delta(delta, "fd_son");
  x_ = start_point(k_, dim);
}

void FdSon::step(const Vector& g) {
  begin_step(g, x_.size());
  sketch_.update(g);
  const SpectralOperator a = sketch_.spectrum().shifted(delta_);
  Vector y = x_ - a.power(-1.0, false).apply(g) / gamma_;
  x_ = project(std::move(y), a, k_);
}

std::size_t FdSon::state_scalars() const {
  return sketch_.state_scalars() + static_cast<std::size_t>(x_.size());
}

}  // namespace sketchy
