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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dqgp/trajectory.hpp"

namespace dqgp {

/// Column header of the trajectory CSV format.
inline constexpr const char* kTrajectoryCsvHeader = "t,px,py,pz,qw,qx,qy,qz";

/// Reads a trajectory CSV (meters, seconds, LF line endings).
///
/// Quaternions are renormalized. Throws ParseError, NonMonotoneTime,
/// InvalidQuaternionRow, or JumpDetected (consecutive d_arc above pi/4),
/// each carrying the offending 1-based line number.
Trajectory load_trajectory(const std::filesystem::path& path,
                           std::optional<std::string> label = std::nullopt,
                           TrajectorySource source = TrajectorySource::recorded,
                           double nominal_rate = 240.0);
Trajectory parse_trajectory_csv(const std::string& text, std::optional<std::string> label = std::nullopt,
                                TrajectorySource source = TrajectorySource::recorded,
                                double nominal_rate = 240.0);

std::string trajectory_to_csv(const Trajectory& trajectory);
void save_trajectory(const std::filesystem::path& path, const Trajectory& trajectory);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace dqgp
