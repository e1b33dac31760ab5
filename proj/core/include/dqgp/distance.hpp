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

#include "dqgp/dual_quaternion.hpp"

namespace dqgp {

/// Great-circle arc between two orientations on the shorter side of the
/// double cover. Range [0, pi/2].
double d_arc(const UnitQuaternion& a, const UnitQuaternion& b);

/// Magnitude of the relative transform conj(a) * b: its rotation arc from the
/// identity plus the norm of its translation. Radians and meters are added 1:1.
double d_mag(const DualQuaternionPose& a, const DualQuaternionPose& b);

}  // namespace dqgp
