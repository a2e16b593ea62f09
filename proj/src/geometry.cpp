#include "beamtrim/geometry.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "beamtrim/errors.hpp"

namespace beamtrim {

namespace {

constexpr double kDriftTolerance = 1e-9;
constexpr double kPi = 3.14159265358979323846;
constexpr double kNearPiMargin = 1e-6;

Vec3 vee(const Mat3& m) { return {m(2, 1), m(0, 2), m(1, 0)}; }

// Left Jacobian of SO(3); maps se(3) translational coordinates to t.
Mat3 left_jacobian(const Vec3& w) {
  const double theta2 = w.squaredNorm();
  const Mat3 k = skew(w);
  if (theta2 < 1e-6) {
    return Mat3::Identity() + (0.5 - theta2 / 24.0) * k + (1.0 / 6.0 - theta2 / 120.0) * k * k;
  }
  const double theta = std::sqrt(theta2);
  const double half_sin = std::sin(0.5 * theta);
  const double a = 2.0 * half_sin * half_sin / theta2;
  const double b = (theta - std::sin(theta)) / (theta2 * theta);
  return Mat3::Identity() + a * k + b * k * k;
}

Mat3 left_jacobian_inverse(const Vec3& w) {
  const double theta2 = w.squaredNorm();
  const Mat3 k = skew(w);
  if (theta2 < 1e-6) {
    return Mat3::Identity() - 0.5 * k + (1.0 / 12.0 + theta2 / 720.0) * k * k;
  }
  const double theta = std::sqrt(theta2);
  const double half = 0.5 * theta;
  const double c = (1.0 - half * std::cos(half) / std::sin(half)) / theta2;
  return Mat3::Identity() - 0.5 * k + c * k * k;
}

}  // namespace

RigidTransform::RigidTransform(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  if (orthonormality_error(rotation_) > kDriftTolerance ||
      std::abs(rotation_.determinant() - 1.0) > kDriftTolerance) {
    rotation_ = orthonormalize(rotation_);
  }
}

RigidTransform RigidTransform::Rotation(const Vec3& axis, double angle) {
  return {rotation_exp(axis.normalized() * angle), Vec3::Zero()};
}

RigidTransform RigidTransform::FromMatrix(const Eigen::Matrix4d& m) {
  return {m.topLeftCorner<3, 3>(), m.topRightCorner<3, 1>()};
}

RigidTransform RigidTransform::inverse() const {
  RigidTransform out;
  out.rotation_ = rotation_.transpose();
  out.translation_ = -(out.rotation_ * translation_);
  return out;
}

Eigen::Matrix4d RigidTransform::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

RigidTransform RigidTransform::operator*(const RigidTransform& other) const {
  return {rotation_ * other.rotation_, rotation_ * other.translation_ + translation_};
}

double RigidTransform::angle() const {
  const double c = std::clamp((rotation_.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double s = vee(rotation_ - rotation_.transpose()).norm() / 2.0;
  return std::atan2(s, c);
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) { return a * b; }

Vec3 apply_to(const RigidTransform& t, const Vec3& p) { return t * p; }

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Mat3 rotation_exp(const Vec3& axis_angle) {
  const double theta2 = axis_angle.squaredNorm();
  const Mat3 k = skew(axis_angle);
  if (theta2 < 1e-12) {
    return Mat3::Identity() + k + 0.5 * k * k;
  }
  const double theta = std::sqrt(theta2);
  const double half_sin = std::sin(0.5 * theta);
  return Mat3::Identity() + std::sin(theta) / theta * k + 2.0 * half_sin * half_sin / theta2 * k * k;
}

Mat3 orthonormalize(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  d(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return svd.matrixU() * d * svd.matrixV().transpose();
}

double orthonormality_error(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
}

Twist log_map(const RigidTransform& t) {
  const Mat3& r = t.rotation();
  const double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  const Vec3 w = vee(r - r.transpose()) / 2.0;  // sin(theta) * axis
  const double s = w.norm();
  const double theta = std::atan2(s, c);
  if (theta >= kPi - kNearPiMargin) {
    throw AngleNearPi("rotation angle too close to pi for a unique logarithm");
  }

  Vec3 omega;
  if (theta < 1e-8) {
    omega = w * (1.0 + theta * theta / 6.0);
  } else if (c < -0.9) {
    // sin(theta) is small here; read the axis off the symmetric part instead.
    const Mat3 b = (r + r.transpose()) / 2.0 - c * Mat3::Identity();
    int col = 0;
    b.diagonal().maxCoeff(&col);
    Vec3 axis = b.col(col) / std::sqrt(b(col, col) * (1.0 - c));
    axis.normalize();
    if (axis.dot(w) < 0.0) axis = -axis;
    omega = axis * theta;
  } else {
    omega = w * (theta / s);
  }
  return {omega, left_jacobian_inverse(omega) * t.translation()};
}

RigidTransform exp_map(const Twist& w) {
  return {rotation_exp(w.rotation), left_jacobian(w.rotation) * w.translation};
}

}  // namespace beamtrim
