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

#include "dqgp/quaternion.hpp"

#include <algorithm>
#include <cmath>

#include "dqgp/errors.hpp"

namespace dqgp {

namespace {
constexpr double kRenormalizeDrift = 1e-9;
}  // namespace

double Quaternion::norm() const { return std::sqrt(squared_norm()); }

bool Quaternion::is_finite() const {
  return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

Quaternion canonical_sign(const Quaternion& q) {
  for (double c : {q.w, q.x, q.y, q.z}) {
    if (c > 0.0) return q;
    if (c < 0.0) return -q;
  }
  return q;
}

UnitQuaternion::UnitQuaternion(const Quaternion& q) {
  if (!q.is_finite()) throw InvalidQuaternion("quaternion has non-finite components");
  const double n = q.norm();
  if (n < 1e-12) throw InvalidQuaternion("quaternion norm is zero");
  q_ = q * (1.0 / n);
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (n == 0.0) return identity();
  const Vec3 u = axis / n;
  const double s = std::sin(0.5 * angle);
  return UnitQuaternion(Quaternion{std::cos(0.5 * angle), s * u.x(), s * u.y(), s * u.z()});
}

UnitQuaternion UnitQuaternion::from_rotation_vector(const Vec3& r) {
  return from_axis_angle(r, r.norm());
}

Vec3 UnitQuaternion::rotate(const Vec3& v) const {
  return (q_ * Quaternion::pure(v) * q_.conjugate()).vec();
}

UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b) {
  const Quaternion p = a.q_ * b.q_;
  if (std::abs(p.norm() - 1.0) > kRenormalizeDrift) return UnitQuaternion(p);
  return UnitQuaternion::from_normalized(p);
}

bool same_orientation(const UnitQuaternion& a, const UnitQuaternion& b, double tol) {
  const Vec4 va = a.as_vector();
  const Vec4 vb = b.as_vector();
  return (va - vb).cwiseAbs().maxCoeff() <= tol || (va + vb).cwiseAbs().maxCoeff() <= tol;
}

UnitQuaternion slerp(const UnitQuaternion& a, const UnitQuaternion& b, double s) {
  Quaternion qb = b.quaternion();
  double c = dot(a.quaternion(), qb);
  if (c < 0.0) {
    qb = -qb;
    c = -c;
  }
  const Quaternion& qa = a.quaternion();
  const double theta = std::acos(std::min(c, 1.0));
  if (theta < 1e-9) return UnitQuaternion(qa * (1.0 - s) + qb * s);
  const double st = std::sin(theta);
  return UnitQuaternion(qa * (std::sin((1.0 - s) * theta) / st) + qb * (std::sin(s * theta) / st));
}

}  // namespace dqgp
