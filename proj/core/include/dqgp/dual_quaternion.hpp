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

#include "dqgp/quaternion.hpp"

namespace dqgp {

/// Rotation + translation pair in the recording frame.
struct RigidPose {
  UnitQuaternion rotation;
  Vec3 translation = Vec3::Zero();
};

/// Unit dual quaternion real + eps * dual encoding a rigid transform.
///
/// Invariants (enforced on construction): |real| = 1 and <real, dual> = 0,
/// both within 1e-9. The pose p = (r, t) is stored as r + (eps/2) t r.
class DualQuaternionPose {
 public:
  DualQuaternionPose() = default;

  /// Normalizes an arbitrary dual quaternion onto the unit constraint.
  /// Throws DegenerateDualQuaternion if |real| < 1e-6 or entries are not finite.
  DualQuaternionPose(const Quaternion& real, const Quaternion& dual);

  static DualQuaternionPose identity() { return {}; }
  /// r + (eps/2) * t * r with t the imaginary quaternion of `translation`.
  static DualQuaternionPose from_pose(const UnitQuaternion& rotation, const Vec3& translation);
  static DualQuaternionPose from_translation(const Vec3& translation) {
    return from_pose(UnitQuaternion::identity(), translation);
  }
  static DualQuaternionPose from_array(const std::array<double, 8>& v);

  const UnitQuaternion& real() const { return real_; }
  const Quaternion& dual() const { return dual_; }
  UnitQuaternion rotation() const { return real_; }
  /// Imaginary part of 2 * dual * conj(real).
  Vec3 translation() const;
  RigidPose to_pose() const { return {real_, translation()}; }

  /// real wxyz followed by dual wxyz.
  std::array<double, 8> to_array() const;

  /// Quaternion conjugate of both parts; the inverse transform for unit inputs.
  DualQuaternionPose conjugate() const;
  /// Same pose with the real part on the w >= 0 hemisphere.
  DualQuaternionPose canonical() const;
  DualQuaternionPose operator-() const;

  friend DualQuaternionPose operator*(const DualQuaternionPose& a, const DualQuaternionPose& b);

 private:
  struct Trusted {};
  DualQuaternionPose(Trusted, const Quaternion& real, const Quaternion& dual)
      : real_(UnitQuaternion::from_normalized(real)), dual_(dual) {}

  UnitQuaternion real_;
  Quaternion dual_{0.0, 0.0, 0.0, 0.0};
};

/// (a_re b_re) + eps (a_re b_du + a_du b_re).
inline DualQuaternionPose dq_mul(const DualQuaternionPose& a, const DualQuaternionPose& b) {
  return a * b;
}
inline DualQuaternionPose dq_conjugate(const DualQuaternionPose& dq) { return dq.conjugate(); }
inline DualQuaternionPose from_pose(const UnitQuaternion& rotation, const Vec3& translation) {
  return DualQuaternionPose::from_pose(rotation, translation);
}
inline RigidPose to_pose(const DualQuaternionPose& dq) { return dq.to_pose(); }

/// Pose equality up to the double cover (dq ~ -dq).
bool same_pose(const DualQuaternionPose& a, const DualQuaternionPose& b, double tol = 1e-9);

}  // namespace dqgp
