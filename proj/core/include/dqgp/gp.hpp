// Copyright 2026 The dqgp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dqgp/kernels.hpp"
#include "dqgp/nelder_mead.hpp"
#include "dqgp/tangent_space.hpp"
#include "dqgp/trajectory.hpp"

namespace dqgp {

inline constexpr int kOutputDims = 6;

using TargetMatrix = Eigen::Matrix<double, Eigen::Dynamic, kOutputDims>;
using HyperparameterSet = std::array<Hyperparameters, kOutputDims>;

struct GpFitOptions {
  /// Multi-start count; starts are laid out on a log-grid around data scales.
  int starts = 8;
  NelderMeadOptions simplex{200, 1e-7, 1e-5, 0.5};
  JitterPolicy jitter;
  /// 0 keeps the exact grid; other values shift starts by a seeded offset.
  std::uint64_t seed = 0;
};

/// Optimization record of one output dimension.
struct DimensionFit {
  Hyperparameters hp;
  double log_marginal_likelihood = 0.0;
  /// LML reached by each restart, and the running best over restarts.
  std::vector<double> restart_values;
  std::vector<double> best_so_far;
};

using FitReport = std::array<DimensionFit, kOutputDims>;

/// -1/2 y^T K^-1 y - 1/2 log|K| - n/2 log(2 pi) with K built from a
/// precomputed distance matrix. Throws NotPositiveDefinite.
double log_marginal_likelihood(const Eigen::MatrixXd& distances, const Eigen::VectorXd& y,
                               const Hyperparameters& hp, const JitterPolicy& jitter = {});

/// Maximizes the LML of one output over (log sigma_f, log l, log sigma_n).
DimensionFit fit_dimension(const Eigen::MatrixXd& distances, const Eigen::VectorXd& y,
                           const GpFitOptions& options = {});

struct Prediction {
  TangentVelocity mean;
  /// Predictive variance of an observation (latent variance + sigma_n^2).
  Vec6 variance = Vec6::Zero();
};

/// Zero-mean GP from poses to one-step tangent velocities, one independent
/// scalar GP per output dimension sharing the d_mag input metric.
class GpModel {
 public:
  /// Fits all six dimensions. Requires n >= 2 and at least two distinct
  /// inputs (DegenerateData otherwise).
  static GpModel fit(std::vector<DualQuaternionPose> inputs, TargetMatrix targets,
                     const GpFitOptions& options = {}, FitReport* report = nullptr);

  /// Builds a model with fixed hyperparameters.
  static GpModel assemble(std::vector<DualQuaternionPose> inputs, TargetMatrix targets,
                          const HyperparameterSet& hp, const JitterPolicy& jitter = {});

  Prediction predict(const DualQuaternionPose& query) const;
  double log_marginal_likelihood(int dim) const;

  std::size_t size() const { return inputs_.size(); }
  const std::vector<DualQuaternionPose>& inputs() const { return inputs_; }
  const TargetMatrix& targets() const { return targets_; }
  const HyperparameterSet& hyperparameters() const { return hp_; }
  double jitter(int dim) const { return dims_[static_cast<std::size_t>(dim)].gram.jitter; }

 private:
  struct Dimension {
    GramMatrix gram;
    Eigen::VectorXd alpha;
  };

  GpModel(std::vector<DualQuaternionPose> inputs, TargetMatrix targets, const HyperparameterSet& hp,
          const Eigen::MatrixXd& distances, const JitterPolicy& jitter);

  std::vector<DualQuaternionPose> inputs_;
  TargetMatrix targets_;
  HyperparameterSet hp_;
  std::array<Dimension, kOutputDims> dims_;
};

/// Advances a pose by one velocity step: rotation by central projection,
/// translation by addition.
DualQuaternionPose step(const DualQuaternionPose& pose, const TangentVelocity& velocity);

struct RolloutOptions {
  /// Largest admissible |p| in meters.
  double workspace_bound = 10.0;
  double rate = 240.0;
  double start_time = 0.0;
};

struct Rollout {
  Trajectory trajectory;  // n_steps + 1 poses including the start
  std::vector<Vec6> variances;  // one per predicted step
};

/// Iterates predict -> step feeding back the posterior mean. Throws
/// DivergenceDetected when a pose leaves the workspace bound.
Rollout rollout(const GpModel& model, const DualQuaternionPose& start, std::size_t n_steps,
                const RolloutOptions& options = {});

}  // namespace dqgp
