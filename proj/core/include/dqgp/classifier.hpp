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

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqgp/gp.hpp"
#include "dqgp/kernels.hpp"
#include "dqgp/trajectory.hpp"

namespace dqgp {

/// One known condition: its training trajectories and the kernel used to
/// weigh distances to them.
class ConditionModel {
 public:
  /// Throws InsufficientData unless there are at least two trajectories,
  /// each with at least one sample.
  ConditionModel(std::string label, std::vector<Trajectory> trajectories, Hyperparameters hp,
                 std::shared_ptr<const GpModel> gp = nullptr);

  /// Uses aggregate_hyperparameters() of the GP.
  static ConditionModel from_gp(std::string label, std::vector<Trajectory> trajectories,
                                std::shared_ptr<const GpModel> gp);

  const std::string& label() const { return label_; }
  const std::vector<Trajectory>& trajectories() const { return trajectories_; }
  const Hyperparameters& hp() const { return hp_; }
  const std::shared_ptr<const GpModel>& gp() const { return gp_; }
  std::size_t size() const { return trajectories_.size(); }

  /// Sample positions of trajectory j, used for pruning the closest-pose scan.
  const std::vector<Vec3>& positions(std::size_t j) const { return positions_[j]; }

 private:
  std::string label_;
  std::vector<Trajectory> trajectories_;
  Hyperparameters hp_;
  std::shared_ptr<const GpModel> gp_;
  std::vector<std::vector<Vec3>> positions_;
};

/// One scalar kernel from the six per-dimension fits: root mean square of
/// sigma_f and sigma_n, geometric mean of the length scales.
Hyperparameters aggregate_hyperparameters(const HyperparameterSet& hp);

/// sqrt(d^T K^-1 d) with d_j = d_mag(dq, ref_j) and K the k_mag Gram of the
/// references (noise and jitter per JitterPolicy). Floored at epsilon_floor.
/// Throws NotPositiveDefinite, DimensionMismatch for empty refs.
double mahalanobis(const DualQuaternionPose& dq, std::span<const DualQuaternionPose> refs,
                   const Hyperparameters& hp, double epsilon_floor = 1e-8,
                   const JitterPolicy& jitter = {});

/// Index of argmin_k d_mag(dq, trajectory_j(k)) per training trajectory,
/// ties to the smallest index. Exact; prunes with |dp| <= d_mag.
std::vector<std::size_t> closest_pose_indices(const DualQuaternionPose& dq, const ConditionModel& condition);
std::vector<DualQuaternionPose> closest_poses(const DualQuaternionPose& dq, const ConditionModel& condition);

/// s_n / sum_i s_i for similarities s_n = 1 / d_M(n).
std::vector<double> normalize_inverse_distances(std::span<const double> mahalanobis_distances);

/// Per-condition probability of the current pose over the given conditions.
std::vector<double> step_probability(const DualQuaternionPose& dq,
                                     std::span<const ConditionModel* const> conditions,
                                     double epsilon_floor = 1e-8, const JitterPolicy& jitter = {});

/// Integral of a per-step probability trace over 1-based steps
/// [from_step, to_step]. Each step owns a unit cell; the trace is linearly
/// interpolated between steps and held flat over the outer half cells. A
/// single step integrates to its own value. Throws RangeError.
double trajectory_likelihood(std::span<const double> trace, std::size_t from_step, std::size_t to_step);

struct ClassifierConfig {
  double abs_nominate = 0.7;
  double abs_eliminate = 0.02;
  std::size_t window_m = 40;
  double win_nominate = 0.6 * 40;  // probability x steps
  double win_eliminate = 0.08 * 40;
  double epsilon_floor = 1e-8;
  /// Regularization of the reference Gram matrices; reaches further than the
  /// GP default because SE over d_mag can be indefinite.
  JitterPolicy jitter{1e-10, 10.0, 1.0, 1e12};

  /// Throws InvalidConfig unless thresholds bracket the uniform split for
  /// `n_conditions` >= 2: abs_eliminate < 1/N < abs_nominate and
  /// win_eliminate < m/N < win_nominate.
  void validate(std::size_t n_conditions) const;
};

enum class ClassifierStatus { running, nominated, exhausted };

/// Names recorded in decision events.
inline constexpr const char* kRuleAbsolute = "absolute";
inline constexpr const char* kRuleWindow = "window";
inline constexpr const char* kRuleLastRemaining = "last_remaining";

struct DecisionEvent {
  std::string label;
  std::size_t step = 0;
  std::string rule;
};

struct ClassifierState {
  std::vector<std::size_t> active;  // indices into the model list, ascending
  /// Probability of each model at every step it was active (steps 1..).
  std::vector<std::vector<double>> prob_trace;
  std::vector<double> window_integrals;  // latest windowed integral per model
  std::size_t step = 0;
  ClassifierStatus status = ClassifierStatus::running;
  std::optional<DecisionEvent> nomination;
  std::vector<DecisionEvent> eliminations;
};

ClassifierState initial_state(std::size_t n_models);

/// Processes one pose: probabilities over the active set, then nomination
/// rules (absolute, then windowed) and, when nothing was nominated,
/// elimination rules (absolute, then windowed). A single survivor is
/// nominated. Terminal states are returned unchanged.
ClassifierState advance(ClassifierState state, const DualQuaternionPose& dq,
                        std::span<const ConditionModel> models, const ClassifierConfig& cfg);

/// Stateful wrapper over advance() for one stream; models must outlive it.
class StreamClassifier {
 public:
  /// Validates cfg against the number of models.
  StreamClassifier(std::span<const ConditionModel> models, ClassifierConfig cfg);

  const ClassifierState& advance(const DualQuaternionPose& dq);
  /// Marks a still-running stream as exhausted.
  void finish();
  const ClassifierState& state() const { return state_; }
  bool done() const { return state_.status != ClassifierStatus::running; }

 private:
  std::span<const ConditionModel> models_;
  ClassifierConfig cfg_;
  ClassifierState state_;
};

struct ClassificationReport {
  std::string trajectory_id;
  std::optional<std::string> true_label;
  std::optional<std::string> nominated;
  std::optional<std::size_t> nomination_step;
  std::optional<double> nomination_fraction;
  std::string nomination_rule;
  ClassifierStatus status = ClassifierStatus::running;
  std::size_t trajectory_length = 0;
  std::size_t steps_observed = 0;
  std::vector<DecisionEvent> eliminations;
  std::vector<std::string> labels;  // model order
  std::vector<std::vector<double>> traces;  // per model, per observed step while active

  bool correct() const { return nominated && true_label && *nominated == *true_label; }
};

/// Feeds the trajectory one pose at a time and stops at nomination; no
/// sample past the nomination step is read. Needs at least two models.
ClassificationReport classify_stream(const Trajectory& trajectory, std::span<const ConditionModel> models,
                                     const ClassifierConfig& cfg);

const char* to_string(ClassifierStatus status);

}  // namespace dqgp
