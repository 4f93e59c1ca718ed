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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "sketchy/optimizer.hpp"

namespace sketchy {

EpochSchedule EpochSchedule::points(std::vector<std::int64_t> pts) {
  if (pts.empty() || pts.front() != 0) throw std::invalid_argument("epoch schedule must start at 0");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] <= pts[i - 1]) throw std::invalid_argument("epoch schedule must be strictly increasing");
  EpochSchedule s;
  s.points_ = std::move(pts);
  return s;
}

EpochSchedule EpochSchedule::every(std::int64_t interval) {
  if (interval < 1) throw std::invalid_argument("epoch interval must be at least 1");
  EpochSchedule s;
  s.interval_ = interval;
  return s;
}

bool EpochSchedule::is_update_point(std::int64_t t) const {
  if (interval_ > 0) return t % interval_ == 0;
  return std::binary_search(points_.begin(), points_.end(), t);
}

EpochAdaGrad::EpochAdaGrad(Matrix g0, double eta, EpochSchedule schedule, ConstraintSet k,
                           Refresh refresh)
    : g_(std::move(g0)), eta_(eta), schedule_(std::move(schedule)), k_(std::move(k)), refresh_(refresh) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("epoch_adagrad: eta must be positive");
  require_symmetric(g_, "epoch_adagrad: G0");
  const SymEig e = sym_eig(g_);
  if (!(e.values(e.dim() - 1) > 0.0)) throw std::invalid_argument("epoch_adagrad: G0 must be positive definite");
  const int d = static_cast<int>(g_.rows());
  x_ = k_.is_ball() ? k_.center(d) : Vector::Zero(d);
  g_at_point_ = g_;
}

void EpochAdaGrad::refresh_root() {
  const SpectralOperator op = SpectralOperator::from_eig(sym_eig(g_));
  inv_root_ = op.power(-0.5, true);
  if (k_.is_ball()) root_ = op.power(0.5, true);
  ++refreshes_;
}

void EpochAdaGrad::step(const Vector& g) {
  begin_step(g, x_.size());
  const std::int64_t t = rounds_;
  const bool epoch_start = schedule_.is_update_point(t - 1);
  if (epoch_start && refresh_ == Refresh::kLagged) refresh_root();
  g_.noalias() += g * g.transpose();
  if (epoch_start && refresh_ == Refresh::kIncludeCurrent) refresh_root();

  Vector y = x_ - eta_ * inv_root_.apply(g);
  x_ = k_.is_ball() ? project_weighted(y, root_, k_).x : std::move(y);

  if (schedule_.is_update_point(t)) {
    errors_.push_back(epoch_error_term(g_at_point_, g_ - g_at_point_));
    g_at_point_ = g_;
  }
}

std::size_t EpochAdaGrad::state_scalars() const {
  const auto d = static_cast<std::size_t>(x_.size());
  return d + 3 * d * d;
}

}  // namespace sketchy
