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

#ifndef SKETCHY_FD_SKETCH_HPP_
#define SKETCHY_FD_SKETCH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sketchy/linalg.hpp"
#include "sketchy/spectral_operator.hpp"

namespace sketchy {

/// How an update eigendecomposes beta * B B^T + M.
enum class FdMethod {
  /// Eigendecomposes the small Gram matrix of [sqrt(beta) B, F] where
  /// M = F F^T; cost O(d (l + k)^2).
  kFactored,
  /// Forms the d x d matrix and eigendecomposes it directly.
  kDense,
};

const char* to_string(FdMethod method);
FdMethod parse_fd_method(const std::string& name);

/// Diagnostic snapshot of one deflation. `kept` holds the orthonormal top
/// directions retained at that step (at most l of them, only those with
/// nonzero eigenvalue), so the complement projector is I - kept kept^T.
struct DeflationRecord {
  std::int64_t step = 0;
  double rho = 0.0;
  Matrix kept;

  Matrix complement_projector() const;
};

/// Plain-data form of a sketch, used for checkpoints.
struct FdSketchState {
  int dim = 0;
  int sketch_size = 0;
  double beta2 = 1.0;
  std::int64_t step = 0;
  double escaped_mass = 0.0;
  FdMethod method = FdMethod::kFactored;
  Matrix factor;  // dim x sketch_size
};

/// Frequent Directions sketch of a stream of PSD updates.
///
/// Holds a d x l factor B whose last column is exactly zero, so the sketch
/// B B^T has rank at most l - 1. Each update eigendecomposes
/// beta * B B^T + M, keeps the top l directions, and lowers every kept
/// eigenvalue by the l-th one (the escaped mass rho_t).
///
/// escaped_mass() is the discounted running total sum_s beta^(t-s) rho_s;
/// with beta = 1 it is the plain cumulative escaped mass and is
/// nondecreasing. The state is d * l factor scalars plus a few counters.
class FdSketch {
 public:
  FdSketch(int dim, int sketch_size, double beta2 = 1.0, FdMethod method = FdMethod::kFactored);

  static FdSketch from_state(const FdSketchState& state);
  FdSketchState state() const;

  /// Rank-one update with g g^T. Returns rho_t.
  double update(const Vector& g);
  /// Update with M = f f^T for a d x k factor f. Returns rho_t.
  double update_factor(const Matrix& f);

  int dim() const { return dim_; }
  int sketch_size() const { return sketch_size_; }
  double beta2() const { return beta2_; }
  FdMethod method() const { return method_; }
  std::int64_t step() const { return step_; }
  double escaped_mass() const { return escaped_mass_; }
  double last_rho() const { return last_rho_; }

  const Matrix& factor() const { return factor_; }
  /// B B^T, materialized for diagnostics.
  Matrix covariance() const;
  /// B B^T as an operator: normalized nonzero columns of B with their
  /// squared norms; zero on the complement.
  SpectralOperator spectrum() const;
  /// B B^T + (escaped_mass + ridge) I.
  SpectralOperator compensated(double ridge = 0.0) const;

  /// Scalars held between updates: the factor plus bookkeeping.
  std::size_t state_scalars() const;

  /// Keeps a DeflationRecord per update (d x l each) when enabled.
  void set_recording(bool on) { recording_ = on; }
  const std::vector<DeflationRecord>& deflations() const { return records_; }

 private:
  double update_factored(const Matrix& f);
  double update_dense(const Matrix& f);
  void finish(double rho, Matrix factor, Matrix kept);

  int dim_;
  int sketch_size_;
  double beta2_;
  FdMethod method_;
  std::int64_t step_ = 0;
  double escaped_mass_ = 0.0;
  double last_rho_ = 0.0;
  Matrix factor_;
  bool recording_ = false;
  std::vector<DeflationRecord> records_;
};

}  // namespace sketchy

#endif  // SKETCHY_FD_SKETCH_HPP_
