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

#include "dqgp/distance.hpp"

#include <cmath>

namespace dqgp {

namespace {

// arccos(|<a, b>|) written as 2 atan2(|a - sb|, |a + sb|); this keeps full
// precision near zero arc where arccos loses about half the digits.
double arc_between(const Quaternion& a, const Quaternion& b) {
  const Quaternion sb = dot(a, b) < 0.0 ? -b : b;
  return 2.0 * std::atan2((a - sb).norm(), (a + sb).norm());
}

constexpr Quaternion kIdentity{1.0, 0.0, 0.0, 0.0};

}  // namespace

double d_arc(const UnitQuaternion& a, const UnitQuaternion& b) {
  return arc_between(a.quaternion(), b.quaternion());
}

double d_mag(const DualQuaternionPose& a, const DualQuaternionPose& b) {
  const DualQuaternionPose rel = dq_mul(a.conjugate(), b);
  return arc_between(kIdentity, rel.real().quaternion()) + rel.translation().norm();
}

}  // namespace dqgp
