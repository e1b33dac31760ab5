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

#include <vector>

#include "dqgp/tangent_space.hpp"
#include "dqgp/trajectory.hpp"

namespace dqgp {

/// GP training example: pose and the velocity that leads to the next pose.
struct TrainingPair {
  DualQuaternionPose pose;
  TangentVelocity velocity;
};

/// Per consecutive pair: v_ts = tangent_log(q(k), q(k+1)), p_dot = p(k+1) - p(k),
/// both per time step. Throws AntipodalPair (with sample index) or InvalidVelocity.
std::vector<TrainingPair> derive_velocities(const Trajectory& trajectory,
                                            double v_max = TangentVelocity::kDefaultMax);

}  // namespace dqgp
