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

namespace dqgp {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Plain quaternion w + xi + yj + zk. No norm constraint.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  /// Imaginary quaternion xi + yj + zk.
  static Quaternion pure(const Vec3& v) { return {0.0, v.x(), v.y(), v.z()}; }
  static Quaternion from_vector(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

  Vec3 vec() const { return {x, y, z}; }
  Vec4 as_vector() const { return {w, x, y, z}; }

  constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
  constexpr double squared_norm() const { return w * w + x * x + y * y + z * z; }
  double norm() const;
  bool is_finite() const;

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

  /// Hamilton product.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

inline Quaternion quat_mul(const Quaternion& a, const Quaternion& b) { return a * b; }

/// Euclidean inner product in R^4; equals Re(a * conj(b)).
constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Sign representative with w >= 0; ties broken by the first nonzero
/// component being positive.
Quaternion canonical_sign(const Quaternion& q);

/// Point on S3, i.e. a 3D orientation up to the double cover.
///
/// Construction renormalizes. The stored sign is not altered; use
/// canonical() to pick the w >= 0 hemisphere.
class UnitQuaternion {
 public:
  UnitQuaternion() = default;
  /// Throws InvalidQuaternion for non-finite or (near) zero input.
  explicit UnitQuaternion(const Quaternion& q);
  UnitQuaternion(double w, double x, double y, double z) : UnitQuaternion(Quaternion{w, x, y, z}) {}

  static UnitQuaternion identity() { return {}; }
  /// Rotation of `angle` radians about `axis` (need not be normalized).
  static UnitQuaternion from_axis_angle(const Vec3& axis, double angle);
  /// Rotation by the rotation vector `r` (angle = |r|).
  static UnitQuaternion from_rotation_vector(const Vec3& r);
  /// Skips normalization; caller guarantees |q| = 1 to rounding.
  static UnitQuaternion from_normalized(const Quaternion& q) {
    UnitQuaternion u;
    u.q_ = q;
    return u;
  }

  const Quaternion& quaternion() const { return q_; }
  double w() const { return q_.w; }
  double x() const { return q_.x; }
  double y() const { return q_.y; }
  double z() const { return q_.z; }
  Vec4 as_vector() const { return q_.as_vector(); }

  UnitQuaternion conjugate() const { return from_normalized(q_.conjugate()); }
  UnitQuaternion canonical() const { return from_normalized(canonical_sign(q_)); }
  UnitQuaternion operator-() const { return from_normalized(-q_); }

  /// Rotates a 3-vector.
  Vec3 rotate(const Vec3& v) const;

  friend UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b);

 private:
  Quaternion q_{1.0, 0.0, 0.0, 0.0};
};

/// True when a and b encode the same orientation (a = +-b within tol).
bool same_orientation(const UnitQuaternion& a, const UnitQuaternion& b, double tol = 1e-9);

/// Shortest-arc spherical interpolation, s in [0, 1].
UnitQuaternion slerp(const UnitQuaternion& a, const UnitQuaternion& b, double s);

}  // namespace dqgp
