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

#include "dqgp/trajectory.hpp"

#include <cmath>

#include "dqgp/errors.hpp"

namespace dqgp {

const char* to_string(TrajectorySource source) {
  switch (source) {
    case TrajectorySource::recorded: return "recorded";
    case TrajectorySource::synthetic: return "synthetic";
    case TrajectorySource::predicted: return "predicted";
  }
  return "recorded";
}

TrajectorySource trajectory_source_from_string(const std::string& s) {
  if (s == "synthetic") return TrajectorySource::synthetic;
  if (s == "predicted") return TrajectorySource::predicted;
  if (s == "recorded") return TrajectorySource::recorded;
  throw InvalidTrajectory("unknown trajectory source '" + s + "'");
}

Trajectory::Trajectory(std::vector<TrajectorySample> samples, std::optional<std::string> label,
                       TrajectorySource source, double nominal_rate)
    : samples_(std::move(samples)),
      label_(std::move(label)),
      source_(source),
      nominal_rate_(nominal_rate) {
  if (!(nominal_rate_ > 0.0) || !std::isfinite(nominal_rate_)) {
    throw InvalidTrajectory("nominal rate must be positive");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    auto& s = samples_[i];
    if (!std::isfinite(s.t)) throw InvalidTrajectory("non-finite time at sample " + std::to_string(i));
    if (i > 0 && !(s.t > samples_[i - 1].t)) {
      throw InvalidTrajectory("time not strictly increasing at sample " + std::to_string(i));
    }
    s.pose = s.pose.canonical();
  }
}

std::vector<DualQuaternionPose> Trajectory::poses() const {
  std::vector<DualQuaternionPose> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.pose);
  return out;
}

Trajectory Trajectory::prefix(std::size_t n) const {
  Trajectory t = *this;
  if (n < t.samples_.size()) t.samples_.resize(n);
  return t;
}

}  // namespace dqgp
