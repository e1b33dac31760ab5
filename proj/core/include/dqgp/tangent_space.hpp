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

#include <Eigen/Core>

#include "dqgp/dual_quaternion.hpp"

namespace dqgp {

/// Orthonormal basis of the tangent space of S3 at q, embedded in R^4.
struct TangentFrame {
  Eigen::Matrix<double, 4, 3> basis;
};

/// Columns q*i, q*j, q*k (right Hamilton multiplication).
TangentFrame tangent_frame(const UnitQuaternion& q);

/// Maps v_ts from the tangent plane at q back onto S3 through the origin.
/// The result lies on the same hemisphere as q.
UnitQuaternion central_project(const UnitQuaternion& q, const Vec3& v_ts);

/// Inverse of central_project. Throws AntipodalPair when |<q, q_next>| < 1e-6.
Vec3 tangent_log(const UnitQuaternion& q, const UnitQuaternion& q_next);

/// One-step velocity: tangent-space rotation rate and translation rate, both
/// per time step.
struct TangentVelocity {
  Vec3 rotational = Vec3::Zero();
  Vec3 translational = Vec3::Zero();

  static constexpr double kDefaultMax = 10.0;

  Vec6 as_vector() const;
  static TangentVelocity from_vector(const Vec6& v);
  /// Throws InvalidVelocity on non-finite entries or |v| > v_max.
  void validate(double v_max = kDefaultMax) const;
};

}  // namespace dqgp
