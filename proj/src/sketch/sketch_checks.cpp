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

#include "sketchy/sketch_checks.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sketchy {
namespace {

int stream_dim(const std::vector<Vector>& grads) {
  if (grads.empty()) throw std::invalid_argument("empty gradient stream");
  const Eigen::Index d = grads.front().size();
  for (const Vector& g : grads)
    if (g.size() != d) throw std::invalid_argument("gradient stream has mixed dimensions");
  return static_cast<int>(d);
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double min_eigenvalue(const Matrix& m) {
  const SymEig e = sym_eig(symmetrized(m));
  return e.values(e.dim() - 1);
}

double max_eigenvalue(const Matrix& m) { return sym_eig(symmetrized(m)).values(0); }

}  // namespace

Matrix weighted_covariance(const std::vector<Vector>& grads, double beta2) {
  const int d = stream_dim(grads);
  Matrix g = Matrix::Zero(d, d);
  for (const Vector& v : grads) {
    g *= beta2;
    g.noalias() += v * v.transpose();
  }
  return g;
}

double escaped_mass_bound(const Matrix& covariance, int sketch_size) {
  const SymEig e = sym_eig(symmetrized(covariance));
  const int d = e.dim();
  if (sketch_size < 1 || sketch_size > d) throw std::invalid_argument("sketch size out of range");
  Vector lambda = e.values.cwiseMax(0.0);
  // tails(k) = sum_{i >= k} lambda_i (0-based), so sum_{i>k} in 1-based terms.
  Vector tails = Vector::Zero(d + 1);
  for (int i = d - 1; i >= 0; --i) tails(i) = tails(i + 1) + lambda(i);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < sketch_size; ++k) best = std::min(best, tails(k) / (sketch_size - k));
  return best;
}

double escaped_mass_bound(const std::vector<Vector>& grads, int sketch_size, double beta2) {
  return escaped_mass_bound(weighted_covariance(grads, beta2), sketch_size);
}

bool SandwichReport::passed() const {
  return min_lower_gap >= -kOrderSlack && min_upper_gap >= -kOrderSlack &&
         max_identity_residual <= kIdentityTolerance && min_monotone_gap >= -kOrderSlack &&
         max_projector_residual <= kOrderSlack;
}

SandwichReport sandwich_check(const std::vector<Vector>& grads, int sketch_size,
                              FdMethod method) {
  const int d = stream_dim(grads);
  FdSketch sketch(d, sketch_size, 1.0, method);
  sketch.set_recording(true);

  SandwichReport report;
  report.min_lower_gap = report.min_upper_gap = report.min_monotone_gap =
      std::numeric_limits<double>::infinity();

  Matrix g = Matrix::Zero(d, d);
  Matrix deflated = Matrix::Zero(d, d);  // sum_s rho_s N_s
  Matrix prev_tilde = Matrix::Zero(d, d);
  for (const Vector& v : grads) {
    sketch.update(v);
    g.noalias() += v * v.transpose();
    const DeflationRecord& rec = sketch.deflations().back();
    const Matrix n = rec.complement_projector();
    report.max_projector_residual = std::max(report.max_projector_residual, max_abs(n * n - n));
    if (rec.rho != 0.0) deflated += rec.rho * n;

    const Matrix bar = sketch.covariance();
    Matrix tilde = bar;
    tilde.diagonal().array() += sketch.escaped_mass();

    report.min_lower_gap = std::min(report.min_lower_gap, min_eigenvalue(g - bar));
    report.min_upper_gap = std::min(report.min_upper_gap, min_eigenvalue(tilde - g));
    report.min_monotone_gap = std::min(report.min_monotone_gap, min_eigenvalue(tilde - prev_tilde));
    const double residual = max_abs(tilde - g - deflated) / (1.0 + max_abs(g));
    report.max_identity_residual = std::max(report.max_identity_residual, residual);
    prev_tilde = std::move(tilde);
    ++report.steps;
  }
  return report;
}

bool EwfdReport::passed() const {
  return max_error_excess <= kSlack && max_bound_excess <= kSlack;
}

EwfdReport ewfd_error_check(const std::vector<Vector>& grads, int sketch_size, double beta2,
                            FdMethod method) {
  const int d = stream_dim(grads);
  FdSketch sketch(d, sketch_size, beta2, method);
  EwfdReport report;
  report.max_error_excess = report.max_bound_excess = -std::numeric_limits<double>::infinity();

  Matrix g = Matrix::Zero(d, d);
  for (const Vector& v : grads) {
    sketch.update(v);
    g *= beta2;
    g.noalias() += v * v.transpose();
    // G - Gbar is PSD, so its spectral norm is its top eigenvalue; taking the
    // larger of both ends also catches a sketch that overshoots.
    const Matrix diff = g - sketch.covariance();
    const double err = std::max(max_eigenvalue(diff), -min_eigenvalue(diff));
    const double rho = sketch.escaped_mass();
    const double bound = escaped_mass_bound(g, sketch_size);
    report.max_error_excess = std::max(report.max_error_excess, err - rho);
    report.max_bound_excess = std::max(report.max_bound_excess, rho - bound);
    report.final_error = err;
    report.final_rho = rho;
    report.final_bound = bound;
    ++report.steps;
  }
  return report;
}

}  // namespace sketchy
