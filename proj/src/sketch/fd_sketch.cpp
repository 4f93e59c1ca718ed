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

#include "sketchy/fd_sketch.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/QR>

namespace sketchy {
namespace {

// Bookkeeping scalars stored next to the factor: step, beta2, escaped mass,
// last rho.
constexpr std::size_t kBookkeepingScalars = 4;

// lambda_l at or below this fraction of lambda_1 is rounding noise and counts
// as zero escaped mass. Much tighter than kRankTolerance: a real eigenvalue
// clamped away would be lost from the sketch for good.
constexpr double kEscapeTolerance = 1e-13;

void validate_shape(int dim, int sketch_size, double beta2) {
  if (dim < 1) throw std::invalid_argument("FdSketch: dimension must be positive");
  if (sketch_size < 2)
    throw std::invalid_argument("FdSketch: sketch size must be at least 2 (l = 1 keeps nothing)");
  if (sketch_size > dim) {
    std::ostringstream os;
    os << "FdSketch: sketch size " << sketch_size << " exceeds dimension " << dim;
    throw std::invalid_argument(os.str());
  }
  if (!(beta2 >= 0.0 && beta2 <= 1.0))
    throw std::invalid_argument("FdSketch: beta2 must lie in [0, 1]");
}

}  // namespace

const char* to_string(FdMethod method) {
  return method == FdMethod::kDense ? "dense" : "factored";
}

FdMethod parse_fd_method(const std::string& name) {
  if (name == "factored") return FdMethod::kFactored;
  if (name == "dense") return FdMethod::kDense;
  throw std::invalid_argument("unknown FD method '" + name + "'");
}

Matrix DeflationRecord::complement_projector() const {
  Matrix n = -kept * kept.transpose();
  n.diagonal().array() += 1.0;
  return n;
}

FdSketch::FdSketch(int dim, int sketch_size, double beta2, FdMethod method)
    : dim_(dim), sketch_size_(sketch_size), beta2_(beta2), method_(method) {
  validate_shape(dim, sketch_size, beta2);
  factor_ = Matrix::Zero(dim, sketch_size);
}

FdSketch FdSketch::from_state(const FdSketchState& s) {
  FdSketch sketch(s.dim, s.sketch_size, s.beta2, s.method);
  if (s.factor.rows() != s.dim || s.factor.cols() != s.sketch_size)
    throw std::invalid_argument("FdSketch: factor shape does not match dimensions");
  if (!s.factor.allFinite()) throw std::invalid_argument("FdSketch: non-finite factor");
  if (!(s.factor.col(s.sketch_size - 1).array() == 0.0).all())
    throw std::invalid_argument("FdSketch: last factor column must be zero");
  if (s.step < 0 || !(s.escaped_mass >= 0.0))
    throw std::invalid_argument("FdSketch: invalid step or escaped mass");
  sketch.factor_ = s.factor;
  sketch.step_ = s.step;
  sketch.escaped_mass_ = s.escaped_mass;
  return sketch;
}

FdSketchState FdSketch::state() const {
  return FdSketchState{dim_, sketch_size_, beta2_, step_, escaped_mass_, method_, factor_};
}

double FdSketch::update(const Vector& g) {
  if (g.size() != dim_) {
    std::ostringstream os;
    os << "FdSketch::update: gradient has length " << g.size() << ", expected " << dim_;
    throw std::invalid_argument(os.str());
  }
  return update_factor(g);
}

double FdSketch::update_factor(const Matrix& f) {
  if (f.rows() != dim_) {
    std::ostringstream os;
    os << "FdSketch::update: factor has " << f.rows() << " rows, expected " << dim_;
    throw std::invalid_argument(os.str());
  }
  if (!f.allFinite()) throw std::invalid_argument("FdSketch::update: non-finite update");

  if (f.size() == 0 || (f.array() == 0.0).all()) {
    // beta * B B^T already has rank <= l - 1, so nothing escapes.
    Matrix scaled = beta2_ == 1.0 ? factor_ : Matrix(std::sqrt(beta2_) * factor_);
    Matrix kept = recording_ ? SpectralOperator(spectrum()).basis() : Matrix();
    finish(0.0, std::move(scaled), std::move(kept));
    return 0.0;
  }
  return method_ == FdMethod::kDense ? update_dense(f) : update_factored(f);
}

double FdSketch::update_factored(const Matrix& f) {
  const Eigen::Index l = sketch_size_;
  Matrix c(dim_, l + f.cols());
  c.leftCols(l) = std::sqrt(beta2_) * factor_;
  c.rightCols(f.cols()) = f;

  Matrix gram = c.transpose() * c;
  gram = 0.5 * (gram + gram.transpose()).eval();
  const SymEig e = sym_eig(gram);

  const double top = std::max(e.values(0), 0.0);
  const double cutoff = kEscapeTolerance * top;
  double rho = e.values(l - 1);
  if (rho <= cutoff) rho = 0.0;

  // Nonzero eigenvalues of C C^T equal those of C^T C; the eigenvectors are
  // C v / sqrt(lambda).
  Matrix next = Matrix::Zero(dim_, l);
  for (Eigen::Index i = 0; i + 1 < l; ++i) {
    const double lambda = e.values(i);
    // With rho = 0 even tiny directions are kept so no mass is lost.
    if (lambda <= 0.0 || lambda <= rho) continue;
    next.col(i) = c * e.vectors.col(i) * std::sqrt((lambda - rho) / lambda);
  }

  Matrix kept;
  if (recording_) {
    Eigen::Index rank = 0;
    while (rank < l && e.values(rank) > cutoff) ++rank;
    kept.resize(dim_, rank);
    for (Eigen::Index i = 0; i < rank; ++i)
      kept.col(i) = c * e.vectors.col(i) / std::sqrt(e.values(i));
  }
  finish(rho, std::move(next), std::move(kept));
  return rho;
}

double FdSketch::update_dense(const Matrix& f) {
  const Eigen::Index l = sketch_size_;
  Matrix m = beta2_ * (factor_ * factor_.transpose()) + f * f.transpose();
  m = 0.5 * (m + m.transpose()).eval();
  const SymEig e = sym_eig(m);

  const double top = std::max(e.values(0), 0.0);
  const double cutoff = kEscapeTolerance * top;
  double rho = e.values(l - 1);
  if (rho <= cutoff) rho = 0.0;

  Matrix next = Matrix::Zero(dim_, l);
  for (Eigen::Index i = 0; i + 1 < l; ++i) {
    const double lambda = e.values(i);
    if (lambda <= 0.0 || lambda <= rho) continue;
    next.col(i) = e.vectors.col(i) * std::sqrt(lambda - rho);
  }

  Matrix kept;
  if (recording_) {
    Eigen::Index rank = 0;
    while (rank < l && e.values(rank) > cutoff) ++rank;
    kept = e.vectors.leftCols(rank);
  }
  finish(rho, std::move(next), std::move(kept));
  return rho;
}

void FdSketch::finish(double rho, Matrix factor, Matrix kept) {
  factor_ = std::move(factor);
  factor_.col(sketch_size_ - 1).setZero();
  escaped_mass_ = beta2_ * escaped_mass_ + rho;
  last_rho_ = rho;
  ++step_;
  if (recording_) records_.push_back(DeflationRecord{step_, rho, std::move(kept)});
}

Matrix FdSketch::covariance() const { return factor_ * factor_.transpose(); }

SpectralOperator FdSketch::spectrum() const {
  // The columns of B are orthogonal only up to rounding that grows like
  // lambda_1 / lambda_i, so rebuild an orthonormal eigenbasis: B = Q R, then
  // B B^T = Q (R R^T) Q^T with a small l x l eigenproblem.
  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index j = 0; j < factor_.cols(); ++j)
    if (factor_.col(j).squaredNorm() > 0.0) nonzero.push_back(j);
  const Eigen::Index k = static_cast<Eigen::Index>(nonzero.size());
  if (k == 0) return SpectralOperator(Matrix(dim_, 0), Vector(0), 0.0);
  Matrix b(dim_, k);
  for (Eigen::Index i = 0; i < k; ++i) b.col(i) = factor_.col(nonzero[static_cast<std::size_t>(i)]);

  const Eigen::HouseholderQR<Matrix> qr(b);
  const Matrix q = qr.householderQ() * Matrix::Identity(dim_, k);
  const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const SymEig e = sym_eig(r * r.transpose());
  Eigen::Index rank = 0;
  while (rank < k && e.values(rank) > 0.0) ++rank;
  return SpectralOperator(q * e.vectors.leftCols(rank), e.values.head(rank), 0.0);
}

SpectralOperator FdSketch::compensated(double ridge) const {
  return spectrum().shifted(escaped_mass_ + ridge);
}

std::size_t FdSketch::state_scalars() const {
  return static_cast<std::size_t>(factor_.size()) + kBookkeepingScalars;
}

}  // namespace sketchy
