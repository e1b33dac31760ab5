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
#include <optional>
#include <string>
#include <vector>

#include "dqgp/dual_quaternion.hpp"

namespace dqgp {

enum class TrajectorySource { recorded, synthetic, predicted };

const char* to_string(TrajectorySource source);
TrajectorySource trajectory_source_from_string(const std::string& s);

struct TrajectorySample {
  double t = 0.0;  // seconds
  DualQuaternionPose pose;
};

/// Time-indexed pose sequence.
///
/// Invariants, checked on construction (InvalidTrajectory otherwise): time
/// strictly increasing, all components finite. Poses are stored with the
/// real part on the w >= 0 hemisphere.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<TrajectorySample> samples, std::optional<std::string> label = {},
                      TrajectorySource source = TrajectorySource::recorded,
                      double nominal_rate = 240.0);

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const TrajectorySample& operator[](std::size_t i) const { return samples_[i]; }
  const DualQuaternionPose& pose(std::size_t i) const { return samples_[i].pose; }
  const std::vector<TrajectorySample>& samples() const { return samples_; }
  std::vector<DualQuaternionPose> poses() const;

  const std::optional<std::string>& label() const { return label_; }
  TrajectorySource source() const { return source_; }
  double nominal_rate() const { return nominal_rate_; }

  /// Free-form identifier (file stem for loaded data).
  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  /// First `n` samples (all of them if n >= size()).
  Trajectory prefix(std::size_t n) const;

 private:
  std::vector<TrajectorySample> samples_;
  std::optional<std::string> label_;
  TrajectorySource source_ = TrajectorySource::recorded;
  double nominal_rate_ = 240.0;
  std::string id_;
};

}  // namespace dqgp
