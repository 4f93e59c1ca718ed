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

#include "sketchy/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sketchy {
namespace {

constexpr int kMaxBisection = 400;

}  // namespace

ConstraintSet ConstraintSet::l2_ball(double radius, Vector center) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("ball radius must be positive and finite");
  if (center.size() && !center.allFinite()) throw std::invalid_argument("ball center must be finite");
  ConstraintSet k;
  k.kind_ = Kind::kL2Ball;
  k.radius_ = radius;
  k.center_ = std::move(center);
  return k;
}

ConstraintSet ConstraintSet::frobenius_ball(double radius) {
  ConstraintSet k = l2_ball(radius);
  k.kind_ = Kind::kFrobeniusBall;
  return k;
}

Vector ConstraintSet::center(int dim) const {
  if (center_.size() == 0) return Vector::Zero(dim);
  if (center_.size() != dim) throw std::invalid_argument("ball center has the wrong dimension");
  return center_;
}

double ConstraintSet::diameter() const {
  return is_ball() ? 2.0 * radius_ : std::numeric_limits<double>::infinity();
}

bool ConstraintSet::contains(const Vector& x, double tol) const {
  if (!is_ball()) return x.allFinite();
  return (x - center(static_cast<int>(x.size()))).norm() <= radius_ + tol;
}

std::string ConstraintSet::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kUnconstrained: return "unconstrained";
    case Kind::kL2Ball: os << "l2_ball(r=" << radius_ << ")"; break;
    case Kind::kFrobeniusBall: os << "frobenius_ball(r=" << radius_ << ")"; break;
  }
  return os.str();
}

Vector project_euclidean(const Vector& y, const ConstraintSet& k) {
  if (!k.is_ball()) return y;
  const Vector c = k.center(static_cast<int>(y.size()));
  const double n = (y - c).norm();
  if (n <= k.radius()) return y;
  return c + (k.radius() / n) * (y - c);
}

Projection project_weighted(const Vector& y, const SpectralOperator& h, const ConstraintSet& k) {
  if (h.dim() != y.size()) throw LinalgError("project_weighted: dimension mismatch");
  if (!y.allFinite()) throw LinalgError("project_weighted: non-finite point");
  if (h.min_eigenvalue() < -kRankTolerance * std::max(h.max_eigenvalue(), 0.0))
    throw LinalgError("project_weighted: weight operator is not PSD");
  Projection out;
  if (!k.is_ball()) {
    out.x = y;
    return out;
  }
  const int d = static_cast<int>(y.size());
  const double r = k.radius();
  const Vector c = k.center(d);
  const Vector w = y - c;
  if (w.norm() <= r) {
    out.x = y;
    return out;
  }

  // Split w into weighted coordinates (h_i, u_i), the weighted complement,
  // and the null part of H.
  Vector u, perp;
  h.split(w, &u, &perp);
  // Only exact zeros are null: treating tiny weights as zero would leave a
  // stationarity error proportional to ||w||.
  const double hmax = std::max(h.max_eigenvalue(), 0.0);
  const Vector& hv = h.values();
  const bool complement_weighted = h.has_complement() && h.complement() > 0.0;
  Vector null_part = complement_weighted ? Vector::Zero(d) : perp;
  for (Eigen::Index i = 0; i < hv.size(); ++i)
    if (hv(i) <= 0.0) null_part += u(i) * h.basis().col(i);

  auto range_part = [&](double nu) {
    Vector z = Vector::Zero(d);
    for (Eigen::Index i = 0; i < hv.size(); ++i)
      if (hv(i) > 0.0) z += (hv(i) / (hv(i) + nu) * u(i)) * h.basis().col(i);
    if (complement_weighted) z += (h.complement() / (h.complement() + nu)) * perp;
    return z;
  };

  Vector z = range_part(0.0);
  double nu = 0.0;
  if (z.norm() > r) {
    double lo = 0.0;
    double hi = hmax * z.norm() / r;
    for (int it = 0; it < kMaxBisection && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (range_part(mid).norm() > r) lo = mid; else hi = mid;
    }
    nu = hi;
    z = range_part(nu);
  } else {
    const double room2 = r * r - z.squaredNorm();
    const double nn = null_part.norm();
    const double room = std::sqrt(std::max(room2, 0.0));
    z += nn <= room ? null_part : Vector((room / nn) * null_part);
  }
  out.x = c + z;
  out.nu = nu;

  const double norm_z = z.norm();
  const double scale = hmax + nu;
  const double stationarity =
      scale > 0.0 ? (h.apply(Vector(z - w)) + nu * z).norm() / scale : 0.0;
  out.kkt_residual = std::max(
      {std::max(0.0, norm_z - r), nu > 0.0 ? std::abs(norm_z - r) : 0.0, stationarity});
  return out;
}

}  // namespace sketchy
