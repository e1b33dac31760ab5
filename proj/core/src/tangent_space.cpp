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

#include "dqgp/tangent_space.hpp"

#include <cmath>

#include "dqgp/errors.hpp"

namespace dqgp {

namespace {

constexpr Quaternion kI{0.0, 1.0, 0.0, 0.0};
constexpr Quaternion kJ{0.0, 0.0, 1.0, 0.0};
constexpr Quaternion kK{0.0, 0.0, 0.0, 1.0};

}  // namespace

TangentFrame tangent_frame(const UnitQuaternion& q) {
  const Quaternion& u = q.quaternion();
  TangentFrame f;
  f.basis.col(0) = (u * kI).as_vector();
  f.basis.col(1) = (u * kJ).as_vector();
  f.basis.col(2) = (u * kK).as_vector();
  return f;
}

UnitQuaternion central_project(const UnitQuaternion& q, const Vec3& v_ts) {
  // q + B v = q * (1 + v_x i + v_y j + v_z k); <v, q> = 1 so v is on q's side.
  const Quaternion v = q.quaternion() * Quaternion{1.0, v_ts.x(), v_ts.y(), v_ts.z()};
  return UnitQuaternion(v);
}

Vec3 tangent_log(const UnitQuaternion& q, const UnitQuaternion& q_next) {
  const double c = dot(q.quaternion(), q_next.quaternion());
  if (std::abs(c) < 1e-6) throw AntipodalPair("orientations are 90 degrees apart on S3");
  // B^T q = 0, so B^T (q_next / c - q) = B^T q_next / c.
  return tangent_frame(q).basis.transpose() * q_next.as_vector() / c;
}

Vec6 TangentVelocity::as_vector() const {
  Vec6 v;
  v << rotational, translational;
  return v;
}

TangentVelocity TangentVelocity::from_vector(const Vec6& v) {
  return {v.head<3>(), v.tail<3>()};
}

void TangentVelocity::validate(double v_max) const {
  const Vec6 v = as_vector();
  if (!v.allFinite()) throw InvalidVelocity("velocity has non-finite entries");
  if (v.norm() > v_max) throw InvalidVelocity("velocity magnitude exceeds v_max");
}

}  // namespace dqgp
