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

#include <cstdint>
#include <string>
#include <vector>

#include "dqgp/trajectory.hpp"

namespace dqgp {

enum class Grasp { bottom, top, above, reversed };
enum class Handover { right, down, left, up };

/// One grasp x handover configuration. Labels are "<g>-<h>" with the
/// initials of both, e.g. "b-l" for a bottom grasp handed over to the left.
struct Condition {
  Grasp grasp = Grasp::bottom;
  Handover handover = Handover::right;

  std::string label() const;
  /// Throws InvalidConfig for unknown labels.
  static Condition parse(const std::string& label);
  friend bool operator==(const Condition&, const Condition&) = default;
};

/// The ten combinations that are generated by default. Six of the sixteen
/// grasp x handover pairs are excluded as awkward to perform.
std::vector<Condition> default_feasible_conditions();

/// Canonical start (grasp) and end (handover) pose of a condition. Frame is
/// right-handed with z up, units meters.
struct ConditionTemplate {
  RigidPose start;
  RigidPose end;
};
ConditionTemplate condition_template(const Condition& condition);

struct SynthSpec {
  std::vector<Condition> conditions = default_feasible_conditions();
  /// Admissible combinations; every entry of `conditions` must be listed here.
  std::vector<Condition> feasible = default_feasible_conditions();
  int repetitions = 20;
  int min_steps = 404;
  int max_steps = 468;
  /// White measurement noise added to every sample.
  double noise_pos = 5e-4;  // m
  double noise_ang = 1e-3;  // rad
  /// Smooth per-repetition perturbation of the endpoints and the mid path.
  double waypoint_pos = 0.01;  // m
  double waypoint_ang = 0.03;  // rad
  double rate = 240.0;  // Hz
  std::uint64_t seed = 1;

  /// Throws InvalidConfig.
  void validate() const;

  /// RMS bound of d_mag for a single draw of the measurement noise:
  /// sqrt(3) * (noise_pos + noise_ang / 2).
  double noise_floor() const;
};

/// Minimum-jerk blend 10u^3 - 15u^4 + 6u^5.
double minimum_jerk(double u);

/// `repetitions` trajectories per condition, ordered by condition then
/// repetition, ids "<label>_<rep>" (rep zero-padded to 2 digits). Same spec
/// and seed give bit-identical output.
std::vector<Trajectory> generate_synthetic(const SynthSpec& spec);

}  // namespace dqgp
