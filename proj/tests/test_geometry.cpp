#include <gtest/gtest.h>

#include <random>

#include "beamtrim/errors.hpp"
#include "beamtrim/geometry.hpp"
#include "test_util.hpp"

using namespace beamtrim;
using beamtrim::testing::kDeg;
using beamtrim::testing::max_abs_diff;
using beamtrim::testing::random_transform;
using beamtrim::testing::random_vec;

namespace {

RigidTransform rz(double angle, const Vec3& t = Vec3::Zero()) { return {rotation_exp(Vec3::UnitZ() * angle), t}; }

}  // namespace

TEST(Compose, IdentityIsNeutral) {
  std::mt19937_64 gen(1);
  const RigidTransform t = random_transform(gen);
  EXPECT_LT(max_abs_diff(compose(RigidTransform::Identity(), t).matrix(), t.matrix()), 1e-15);
  EXPECT_LT(max_abs_diff(compose(t, RigidTransform::Identity()).matrix(), t.matrix()), 1e-15);
}

TEST(Compose, InverseGivesIdentity) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 100; ++i) {
    const RigidTransform t = random_transform(gen);
    EXPECT_LT(max_abs_diff(compose(t, t.inverse()).matrix(), Eigen::Matrix4d::Identity()), 1e-9);
  }
}

TEST(Compose, QuarterTurns) {
  const RigidTransform a = rz(90 * kDeg, Vec3(1, 0, 0));
  const RigidTransform b = rz(90 * kDeg);
  Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
  expected(0, 0) = -1;
  expected(1, 1) = -1;
  expected(0, 3) = 1;
  EXPECT_LT(max_abs_diff(compose(a, b).matrix(), expected), 1e-12);
}

TEST(Compose, AppliesRightOperandFirst) {
  const RigidTransform shift = RigidTransform::Translation(Vec3(1, 0, 0));
  const RigidTransform turn = rz(90 * kDeg);
  // Shift then turn: (1,0,0) -> (2,0,0) -> (0,2,0).
  EXPECT_LT((compose(turn, shift) * Vec3(1, 0, 0) - Vec3(0, 2, 0)).norm(), 1e-12);
}

TEST(Compose, Associative) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    const RigidTransform a = random_transform(gen), b = random_transform(gen), c = random_transform(gen);
    EXPECT_LT(max_abs_diff(compose(compose(a, b), c).matrix(), compose(a, compose(b, c)).matrix()), 1e-9);
  }
}

TEST(Compose, ResultStaysOrthonormal) {
  std::mt19937_64 gen(4);
  RigidTransform acc;
  for (int i = 0; i < 10000; ++i) acc = compose(random_transform(gen, 0.1, 0.1), acc);
  EXPECT_LT(orthonormality_error(acc.rotation()), 1e-9);
  EXPECT_NEAR(acc.rotation().determinant(), 1.0, 1e-9);
}

TEST(ApplyTo, Examples) {
  EXPECT_EQ(apply_to(RigidTransform::Identity(), Vec3(1, 2, 3)), Vec3(1, 2, 3));
  EXPECT_EQ(apply_to(RigidTransform::Translation(Vec3(0, 0, 5)), Vec3(1, 2, 3)), Vec3(1, 2, 8));
  EXPECT_LT((apply_to(rz(90 * kDeg), Vec3(1, 0, 0)) - Vec3(0, 1, 0)).norm(), 1e-12);
}

TEST(ApplyTo, PreservesDistances) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 500; ++i) {
    const RigidTransform t = random_transform(gen);
    const Vec3 p = random_vec(gen, 20.0), q = random_vec(gen, 20.0);
    EXPECT_NEAR((apply_to(t, p) - apply_to(t, q)).norm(), (p - q).norm(), 1e-9);
  }
}

TEST(RigidTransform, ConstructorRepairsDrift) {
  Mat3 r = rotation_exp(Vec3(0.3, -0.2, 0.1));
  r(0, 1) += 1e-4;
  const RigidTransform t(r, Vec3::Zero());
  EXPECT_LT(orthonormality_error(t.rotation()), 1e-12);
  EXPECT_NEAR(t.rotation().determinant(), 1.0, 1e-12);
}

TEST(RigidTransform, FromMatrixRoundTrip) {
  std::mt19937_64 gen(6);
  const RigidTransform t = random_transform(gen);
  EXPECT_LT(max_abs_diff(RigidTransform::FromMatrix(t.matrix()).matrix(), t.matrix()), 1e-15);
}

TEST(RigidTransform, AngleMatchesAxisAngle) {
  EXPECT_NEAR(rz(0.7).angle(), 0.7, 1e-12);
  EXPECT_NEAR(rz(-0.7).angle(), 0.7, 1e-12);
  EXPECT_NEAR(RigidTransform::Rotation(Vec3(1, 1, 0), 3.0).angle(), 3.0, 1e-9);
}

TEST(ExpLog, IdentityLogIsZero) {
  const Twist w = log_map(RigidTransform::Identity());
  EXPECT_EQ(w.rotation, Vec3::Zero());
  EXPECT_EQ(w.translation, Vec3::Zero());
}

TEST(ExpLog, RotationAboutZMatchesRodrigues) {
  const RigidTransform t = exp_map({Vec3(0, 0, 0.1), Vec3::Zero()});
  Mat3 expected;
  expected << std::cos(0.1), -std::sin(0.1), 0, std::sin(0.1), std::cos(0.1), 0, 0, 0, 1;
  EXPECT_LT((t.rotation() - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(t.translation(), Vec3::Zero());
}

TEST(ExpLog, RotationExpMatchesAngleAxis) {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    const Vec3 w = random_vec(gen, 1.0);
    const Mat3 expected = Eigen::AngleAxisd(w.norm(), w.normalized()).toRotationMatrix();
    EXPECT_LT((rotation_exp(w) - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ExpLog, RoundTripRandom) {
  std::mt19937_64 gen(8);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RigidTransform t = random_transform(gen, 3.1);
    worst = std::max(worst, max_abs_diff(exp_map(log_map(t)).matrix(), t.matrix()));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(ExpLog, RoundTripNearPi) {
  const RigidTransform t = RigidTransform::Rotation(Vec3(1, 2, 3), std::numbers::pi - 1e-4);
  EXPECT_LT(max_abs_diff(exp_map(log_map(t)).matrix(), t.matrix()), 1e-9);
}

TEST(ExpLog, RoundTripSmallAngles) {
  for (double a : {1e-12, 1e-9, 1e-6, 1e-3}) {
    const RigidTransform t(rotation_exp(Vec3(a, -a, 0.5 * a)), Vec3(1, 2, 3));
    EXPECT_LT(max_abs_diff(exp_map(log_map(t)).matrix(), t.matrix()), 1e-12) << a;
  }
}

TEST(ExpLog, TwistScalingFollowsScrew) {
  // Half of a screw motion applied twice is the whole motion.
  const RigidTransform t(rotation_exp(Vec3(0.1, 0.2, -0.3)), Vec3(1, -2, 0.5));
  const RigidTransform half = exp_map(log_map(t) * 0.5);
  EXPECT_LT(max_abs_diff((half * half).matrix(), t.matrix()), 1e-12);
}

TEST(ExpLog, AngleNearPiThrows) {
  EXPECT_THROW(log_map(RigidTransform::Rotation(Vec3::UnitX(), std::numbers::pi)), AngleNearPi);
  EXPECT_THROW(log_map(RigidTransform::Rotation(Vec3::UnitY(), std::numbers::pi - 1e-7)), AngleNearPi);
}

TEST(Orthonormalize, MatchesPolarFactor) {
  std::mt19937_64 gen(9);
  for (int i = 0; i < 50; ++i) {
    const Mat3 r = random_transform(gen).rotation();
    const Mat3 m = r + 1e-3 * Mat3::Random();
    const Mat3 o = orthonormalize(m);
    EXPECT_LT(orthonormality_error(o), 1e-12);
    EXPECT_NEAR(o.determinant(), 1.0, 1e-12);
    // Polar factor: o^T m must be symmetric.
    const Mat3 s = o.transpose() * m;
    EXPECT_LT((s - s.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Skew, CrossProduct) {
  const Vec3 a(1, -2, 3), b(0.5, 4, -1);
  EXPECT_LT((skew(a) * b - a.cross(b)).norm(), 1e-15);
}
