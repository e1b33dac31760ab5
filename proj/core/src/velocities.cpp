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

#include "dqgp/velocities.hpp"

#include <string>

#include "dqgp/errors.hpp"

namespace dqgp {

std::vector<TrainingPair> derive_velocities(const Trajectory& trajectory, double v_max) {
  if (trajectory.size() < 2) throw InsufficientData("derive_velocities needs at least two samples");
  std::vector<TrainingPair> pairs;
  pairs.reserve(trajectory.size() - 1);
  for (std::size_t k = 0; k + 1 < trajectory.size(); ++k) {
    const RigidPose a = trajectory.pose(k).to_pose();
    const RigidPose b = trajectory.pose(k + 1).to_pose();
    TangentVelocity v;
    try {
      v.rotational = tangent_log(a.rotation, b.rotation);
    } catch (const AntipodalPair& e) {
      throw AntipodalPair(std::string(e.what()) + " between samples " + std::to_string(k) +
                          " and " + std::to_string(k + 1));
    }
    v.translational = b.translation - a.translation;
    v.validate(v_max);
    pairs.push_back({trajectory.pose(k), v});
  }
  return pairs;
}

}  // namespace dqgp
