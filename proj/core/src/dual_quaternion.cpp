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

#include "dqgp/dual_quaternion.hpp"

#include <cmath>

#include "dqgp/errors.hpp"

namespace dqgp {

namespace {
constexpr double kRenormalizeDrift = 1e-9;
}  // namespace

DualQuaternionPose::DualQuaternionPose(const Quaternion& real, const Quaternion& dual) {
  if (!real.is_finite() || !dual.is_finite()) {
    throw DegenerateDualQuaternion("dual quaternion has non-finite components");
  }
  const double n = real.norm();
  if (n < 1e-6) throw DegenerateDualQuaternion("real part norm below 1e-6");
  // Values that are already unit and orthogonal to rounding are kept bit for
  // bit, so that serialized poses reload exactly.
  constexpr double kExact = 1e-14;
  if (std::abs(n - 1.0) <= kExact && std::abs(dot(real, dual)) <= kExact) {
    real_ = UnitQuaternion::from_normalized(real);
    dual_ = dual;
    return;
  }
  const Quaternion re = real * (1.0 / n);
  Quaternion du = dual * (1.0 / n);
  du -= re * dot(re, du);
  real_ = UnitQuaternion::from_normalized(re);
  dual_ = du;
}

DualQuaternionPose DualQuaternionPose::from_pose(const UnitQuaternion& rotation,
                                                 const Vec3& translation) {
  const Quaternion& r = rotation.quaternion();
  return {Trusted{}, r, 0.5 * (Quaternion::pure(translation) * r)};
}

DualQuaternionPose DualQuaternionPose::from_array(const std::array<double, 8>& v) {
  return {Quaternion{v[0], v[1], v[2], v[3]}, Quaternion{v[4], v[5], v[6], v[7]}};
}

Vec3 DualQuaternionPose::translation() const {
  return (2.0 * (dual_ * real_.quaternion().conjugate())).vec();
}

std::array<double, 8> DualQuaternionPose::to_array() const {
  const Quaternion& r = real_.quaternion();
  return {r.w, r.x, r.y, r.z, dual_.w, dual_.x, dual_.y, dual_.z};
}

DualQuaternionPose DualQuaternionPose::conjugate() const {
  return {Trusted{}, real_.quaternion().conjugate(), dual_.conjugate()};
}

DualQuaternionPose DualQuaternionPose::canonical() const {
  const Quaternion& r = real_.quaternion();
  if (canonical_sign(r) == r) return *this;
  return -*this;
}

DualQuaternionPose DualQuaternionPose::operator-() const {
  return {Trusted{}, -real_.quaternion(), -dual_};
}

DualQuaternionPose operator*(const DualQuaternionPose& a, const DualQuaternionPose& b) {
  const Quaternion& ar = a.real_.quaternion();
  const Quaternion& br = b.real_.quaternion();
  const Quaternion re = ar * br;
  const Quaternion du = ar * b.dual_ + a.dual_ * br;
  if (std::abs(re.norm() - 1.0) > kRenormalizeDrift || std::abs(dot(re, du)) > kRenormalizeDrift) {
    return {re, du};
  }
  return {DualQuaternionPose::Trusted{}, re, du};
}

bool same_pose(const DualQuaternionPose& a, const DualQuaternionPose& b, double tol) {
  const auto va = a.to_array();
  const auto vb = b.to_array();
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    plus = std::max(plus, std::abs(va[i] - vb[i]));
    minus = std::max(minus, std::abs(va[i] + vb[i]));
  }
  return plus <= tol || minus <= tol;
}

}  // namespace dqgp
