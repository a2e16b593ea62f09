#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>

namespace beamtrim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Logarithmic coordinates of a rigid transform: axis-angle rotation and the
/// translational part of the se(3) tangent vector.
struct Twist {
  Vec3 rotation = Vec3::Zero();     // radians
  Vec3 translation = Vec3::Zero();  // meters

  Twist operator*(double s) const { return {rotation * s, translation * s}; }
};

/// Proper rigid motion x -> R x + t. The rotation is kept orthonormal: the
/// constructor projects it back onto SO(3) when it drifts more than 1e-9.
class RigidTransform {
 public:
  RigidTransform() = default;
  RigidTransform(const Mat3& rotation, const Vec3& translation);

  static RigidTransform Identity() { return {}; }
  static RigidTransform Translation(const Vec3& t) { return {Mat3::Identity(), t}; }
  static RigidTransform Rotation(const Vec3& axis, double angle);
  static RigidTransform FromMatrix(const Eigen::Matrix4d& m);

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  RigidTransform inverse() const;
  Eigen::Matrix4d matrix() const;

  /// this * other: applies `other` first.
  RigidTransform operator*(const RigidTransform& other) const;
  Vec3 operator*(const Vec3& p) const { return rotation_ * p + translation_; }

  /// Rotation angle in [0, pi].
  double angle() const;

 private:
  Mat3 rotation_ = Mat3::Identity();
  Vec3 translation_ = Vec3::Zero();
};

/// Result applies b then a.
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
Vec3 apply_to(const RigidTransform& t, const Vec3& p);

/// Throws AngleNearPi when the rotation angle is >= pi - 1e-6.
Twist log_map(const RigidTransform& t);
RigidTransform exp_map(const Twist& w);

Mat3 skew(const Vec3& v);
Mat3 rotation_exp(const Vec3& axis_angle);
/// Nearest rotation in the Frobenius sense (polar decomposition).
Mat3 orthonormalize(const Mat3& m);
/// max |R^T R - I| entry.
double orthonormality_error(const Mat3& r);

}  // namespace beamtrim
