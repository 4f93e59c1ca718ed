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

#ifndef SKETCHY_OPTIMIZER_HPP_
#define SKETCHY_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sketchy/constraint.hpp"
#include "sketchy/fd_sketch.hpp"
#include "sketchy/linalg.hpp"

namespace sketchy {

/// Play x_t, receive g_t, move to x_{t+1}.
class OnlineOptimizer {
 public:
  virtual ~OnlineOptimizer() = default;

  virtual std::string name() const = 0;
  virtual const Vector& iterate() const = 0;
  virtual void step(const Vector& g) = 0;
  /// Scalars of optimizer state kept between rounds, iterate included.
  virtual std::size_t state_scalars() const = 0;
  /// Cumulative escaped mass of the sketch, 0 for unsketched methods.
  virtual double escaped_mass() const { return 0.0; }
  std::int64_t rounds() const { return rounds_; }

 protected:
  /// Validates g and bumps the round counter.
  void begin_step(const Vector& g, Eigen::Index dim);
  std::int64_t rounds_ = 0;
};

/// Sketchy AdaGrad: FD sketch of sum g g^T compensated by rho_{1:t} I.
class SketchyAdaGrad : public OnlineOptimizer {
 public:
  SketchyAdaGrad(int dim, int sketch_size, double eta, ConstraintSet k = ConstraintSet(),
                 double beta2 = 1.0, FdMethod method = FdMethod::kFactored);

  /// D / sqrt(2).
  static double default_eta(const ConstraintSet& k);

  std::string name() const override { return "s_adagrad"; }
  double eta() const { return eta_; }
  const Vector& iterate() const override { return x_; }
  void set_iterate(const Vector& x);
  void step(const Vector& g) override;
  std::size_t state_scalars() const override;
  double escaped_mass() const override { return sketch_.escaped_mass(); }

  const FdSketch& sketch() const { return sketch_; }
  FdSketch& mutable_sketch() { return sketch_; }
  /// Gtilde_t = Gbar_t + rho_{1:t} I.
  SpectralOperator preconditioner() const { return sketch_.compensated(); }
  double last_kkt_residual() const { return last_kkt_; }

 private:
  FdSketch sketch_;
  double eta_;
  ConstraintSet k_;
  Vector x_;
  double last_kkt_ = 0.0;
};

/// Sketchy Shampoo on m x n iterates. The vector interface uses
/// column-major vec(X).
class SketchyShampoo : public OnlineOptimizer {
 public:
  static constexpr double kDefaultEpsilon = 1e-8;

  SketchyShampoo(int rows, int cols, int left_sketch, int right_sketch, double eta,
                 double epsilon = kDefaultEpsilon, double beta2 = 1.0,
                 FdMethod method = FdMethod::kFactored);

  /// D / sqrt(2 r) with r = min(m, n).
  static double default_eta(double diameter, int rows, int cols);

  std::string name() const override { return "s_shampoo"; }
  const Vector& iterate() const override { return x_; }
  void step(const Vector& g) override;
  void step(const Matrix& g);
  std::size_t state_scalars() const override;
  double escaped_mass() const override { return left_.escaped_mass() + right_.escaped_mass(); }

  Matrix iterate_matrix() const;
  const FdSketch& left() const { return left_; }
  const FdSketch& right() const { return right_; }
  double epsilon() const { return epsilon_; }
  /// Lbar + (rho^L + eps) I and its right counterpart.
  SpectralOperator left_preconditioner() const { return left_.compensated(epsilon_); }
  SpectralOperator right_preconditioner() const { return right_.compensated(epsilon_); }

 private:
  int rows_;
  int cols_;
  FdSketch left_;
  FdSketch right_;
  double eta_;
  double epsilon_;
  Vector x_;
};

/// Update points for step-skipping.
class EpochSchedule {
 public:
  /// Explicit points t_1 = 0 < t_2 < ... < t_K.
  static EpochSchedule points(std::vector<std::int64_t> pts);
  /// Every `interval` rounds (interval 1 refreshes every round).
  static EpochSchedule every(std::int64_t interval);

  bool is_update_point(std::int64_t t) const;
  std::int64_t interval() const { return interval_; }

 private:
  std::vector<std::int64_t> points_;
  std::int64_t interval_ = 0;
};

/// Generic Epoch AdaGrad: a dense accumulator G_t = G_0 + sum g g^T updated
/// every round, and an inverse root refreshed only at update points.
class EpochAdaGrad : public OnlineOptimizer {
 public:
  enum class Refresh {
    /// Round t runs with G_{t_k + 1}^{-1/2}: the root is refreshed right
    /// after the first gradient of the epoch is accumulated. With every round
    /// an update point this is exactly full-matrix AdaGrad.
    kIncludeCurrent,
    /// Round t in (t_k, t_{k+1}] runs with G_{t_k}^{-1/2}.
    kLagged,
  };

  EpochAdaGrad(Matrix g0, double eta, EpochSchedule schedule, ConstraintSet k = ConstraintSet(),
               Refresh refresh = Refresh::kIncludeCurrent);

  std::string name() const override { return "epoch_adagrad"; }
  const Vector& iterate() const override { return x_; }
  void step(const Vector& g) override;
  std::size_t state_scalars() const override;

  /// eps_k for each completed epoch [t_k, t_{k+1}].
  const std::vector<double>& epoch_errors() const { return errors_; }
  const Matrix& accumulator() const { return g_; }
  int refresh_count() const { return refreshes_; }

 private:
  void refresh_root();

  Matrix g_;
  double eta_;
  EpochSchedule schedule_;
  ConstraintSet k_;
  Refresh refresh_;
  Vector x_;
  Matrix g_at_point_;  // G_{t_k}
  SpectralOperator inv_root_;
  SpectralOperator root_;
  std::vector<double> errors_;
  int refreshes_ = 0;
};

/// Online gradient descent with step eta / sqrt(t).
class Ogd : public OnlineOptimizer {
 public:
  Ogd(int dim, double eta, ConstraintSet k = ConstraintSet());
  std::string name() const override { return "ogd"; }
  const Vector& iterate() const override { return x_; }
  void step(const Vector& g) override;
  std::size_t state_scalars() const override { return static_cast<std::size_t>(x_.size()) + 1; }

 private:
  double eta_;
  ConstraintSet k_;
  Vector x_;
};

/// Diagonal AdaGrad: x -= eta g / sqrt(sum g^2), coordinates with no
/// gradient yet are left alone.
class DiagAdaGrad : public OnlineOptimizer {
 public:
  DiagAdaGrad(int dim, double eta, ConstraintSet k = ConstraintSet());
  std::string name() const override { return "diag_adagrad"; }
  const Vector& iterate() const override { return x_; }
  void step(const Vector& g) override;
  std::size_t state_scalars() const override { return 2 * static_cast<std::size_t>(x_.size()); }

 private:
  double eta_;
  ConstraintSet k_;
  Vector x_;
  Vector sum_sq_;
};

/// Full-matrix AdaGrad with G_t = delta I + sum g g^T and pseudo-inverse
/// roots.
class FullAdaGrad : public OnlineOptimizer {
 public:
  FullAdaGrad(int dim, double eta, double delta = 0.0, ConstraintSet k = ConstraintSet());
  std::string name() const override { return "full_adagrad"; }
  const Vector& iterate() const override { return x_; }
  void set_iterate(const Vector& x);
  void step(const Vector& g) override;
  std::size_t state_scalars() const override;
  const Matrix& accumulator() const { return g_; }

 private:
  double eta_;
  ConstraintSet k_;
  Vector x_;
  Matrix g_;
};

/// Ada-FD: x -= eta (Gbar^{1/2} + delta I)^{-1} g with a plain FD sketch.
class AdaFd : public OnlineOptimizer {
 public:
  AdaFd(int dim, int sketch_size, double eta, double delta, ConstraintSet k = ConstraintSet());
  std::string name() const override { return "ada_fd"; }
  const Vector& iterate() const override { return x_; }
  void step(const Vector& g) override;
  std::size_t state_scalars() const override;
  double escaped_mass() const override { return sketch_.escaped_mass(); }

 private:
  FdSketch sketch_;
  double eta_;
  double delta_;
  ConstraintSet k_;
  Vector x_;
};

/// FD-SON: Online Newton step with A_t = Gbar_t + delta I, step
/// x -= (1 / gamma) A_t^{-1} g, projected in the A_t norm. The config's eta
/// field carries gamma.
class FdSon : public OnlineOptimizer {
 public:
  FdSon(int dim, int sketch_size, double gamma, double delta, ConstraintSet k = ConstraintSet());
  std::string name() const override { return "fd_son"; }
  const Vector& iterate() const override { return x_; }
  void step(const Vector& g) override;
  std::size_t state_scalars() const override;
  double escaped_mass() const override { return sketch_.escaped_mass(); }

 private:
  FdSketch sketch_;
  double gamma_;
  double delta_;
  ConstraintSet k_;
  Vector x_;
};

}  // namespace sketchy

#endif  // SKETCHY_OPTIMIZER_HPP_
