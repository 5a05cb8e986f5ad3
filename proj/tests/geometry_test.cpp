// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#include "tacspin/geometry.hpp"

#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <cmath>

#include "tacspin/rng.hpp"

namespace tacspin {
namespace {

constexpr double kTight = 1e-12;
constexpr double kEpsilon = 0.005;

// independent exhaustive oracle: sqrt per candidate, running min
double nearest_oracle(const Vec3& p, const ContactFrameSet& f) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < f.count(); ++i)
    best = std::min(best, std::sqrt((f.points.col(i) - p).squaredNorm()));
  return best;
}

TEST(LidFrames, CylinderEquallySpaced) {
  const auto f = make_lid_frames(LidShape::kCylinder, 0.04, 8);
  ASSERT_EQ(f.count(), 8);
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(f.points.col(i).head<2>().norm(), 0.04, kTight);
    EXPECT_DOUBLE_EQ(f.points.col(i).z(), 0.0);
    const double az = std::atan2(f.points.col(i).y(), f.points.col(i).x());
    EXPECT_NEAR(std::remainder(az - 2.0 * M_PI * i / 8, 2.0 * M_PI), 0.0,
                kTight);
  }
}

TEST(LidFrames, HexagonFaceMidpoints) {
  // apothem of a hexagon with circumradius 0.04: 0.02 * sqrt(3)
  const double apothem = 0.034641016151377546;
  const auto f = make_lid_frames(LidShape::kHexagon, 0.04, 6);
  ASSERT_EQ(f.count(), 6);
  for (int i = 0; i < 6; ++i)
    EXPECT_NEAR(f.points.col(i).norm(), apothem, kTight);
}

TEST(LidFrames, SquareMidpointsThenCorners) {
  const double apothem = 0.028284271247461903;  // 0.04 / sqrt(2)
  const auto f4 = make_lid_frames(LidShape::kSquare, 0.04, 4);
  for (int i = 0; i < 4; ++i)
    EXPECT_NEAR(f4.points.col(i).norm(), apothem, kTight);
  // with 8 points the odd ones land on the corners at full circumradius
  const auto f8 = make_lid_frames(LidShape::kSquare, 0.04, 8);
  for (int i = 0; i < 8; ++i) {
    const double expect = (i % 2 == 0) ? apothem : 0.04;
    EXPECT_NEAR(f8.points.col(i).norm(), expect, 1e-12);
  }
}

TEST(LidFrames, AllWithinRimPlusMargin) {
  for (auto shape :
       {LidShape::kCylinder, LidShape::kSquare, LidShape::kHexagon}) {
    const auto f = make_lid_frames(shape, 0.04, 16);
    for (int i = 0; i < f.count(); ++i)
      EXPECT_LE(f.points.col(i).norm(), 0.04 + 0.005);
  }
}

TEST(LidFrames, RejectsBadArguments) {
  EXPECT_THROW(make_lid_frames(LidShape::kCylinder, 0.0, 8), ConfigError);
  EXPECT_THROW(make_lid_frames(LidShape::kCylinder, 0.04, 0), ConfigError);
  EXPECT_THROW(parse_shape("cone"), ConfigError);
}

TEST(LidFrames, AngleUpdateIsRigidRotation) {
  const auto f = make_lid_frames(LidShape::kHexagon, 0.04, 12);
  const auto g = f.at_angle(0.7);
  for (int i = 0; i < f.count(); ++i) {
    EXPECT_NEAR(g.points.col(i).norm(), f.points.col(i).norm(), kTight);
    for (int j = 0; j < f.count(); ++j)
      EXPECT_NEAR((g.points.col(i) - g.points.col(j)).norm(),
                  (f.points.col(i) - f.points.col(j)).norm(), kTight);
  }
}

TEST(NearestDistance, BitEqualToExhaustiveSearch) {
  Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    ContactFrameSet f;
    const int m = 1 + static_cast<int>(rng.bits() % 32);
    f.points.resize(3, m);
    for (int i = 0; i < m; ++i)
      f.points.col(i) = rng.normal_vector(3, 0.05);
    const Vec3 p = rng.normal_vector(3, 0.05);
    const double got = nearest_distance(p, f);
    const double want = nearest_oracle(p, f);
    EXPECT_EQ(got, want);  // bitwise, not approximate
  }
}

TEST(NearestDistance, EmptySetIsConfigError) {
  ContactFrameSet f;
  f.points.resize(3, 0);
  EXPECT_THROW(nearest_distance(Vec3::Zero(), f), ConfigError);
}

TactileArray one_finger_at(const std::vector<Vec3>& pts) {
  TactileArray t;
  t.fingers = 1;
  t.per_finger = static_cast<int>(pts.size());
  t.points.resize(3, t.per_finger);
  for (int i = 0; i < t.per_finger; ++i) t.points.col(i) = pts[i];
  return t;
}

TEST(SenseContacts, ThresholdKeepsDistanceValue) {
  ContactFrameSet f;
  f.points.resize(3, 1);
  f.points.col(0) = Vec3(0.04, 0.0, 0.0);
  // one sensor 4 mm out, one 6 mm out: only the first penetrates
  const auto t = one_finger_at(
      {Vec3(0.044, 0.0, 0.0), Vec3(0.046, 0.0, 0.0)});
  const auto rep = sense_contacts(t, f, kEpsilon);
  EXPECT_NEAR(rep.penetration(0, 0), 0.004, kTight);
  EXPECT_DOUBLE_EQ(rep.penetration(0, 1), 0.0);
  EXPECT_TRUE(rep.contact[0]);
  EXPECT_NEAR(rep.max_distance, 0.006, kTight);
}

TEST(SenseContacts, PenetrationZeroExactlyWhenBeyondEpsilon) {
  Rng rng(7);
  const auto f = make_lid_frames(LidShape::kCylinder, 0.04, 8);
  for (int trial = 0; trial < 200; ++trial) {
    TactileArray t;
    t.fingers = 5;
    t.per_finger = 9;
    t.points.resize(3, 45);
    for (int i = 0; i < 45; ++i)
      t.points.col(i) = Vec3(rng.uniform(-0.06, 0.06),
                             rng.uniform(-0.06, 0.06),
                             rng.uniform(-0.02, 0.02));
    const auto rep = sense_contacts(t, f, kEpsilon);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 9; ++j) {
        if (rep.distance(i, j) > kEpsilon) {
          EXPECT_DOUBLE_EQ(rep.penetration(i, j), 0.0);
        } else {
          EXPECT_DOUBLE_EQ(rep.penetration(i, j), rep.distance(i, j));
          EXPECT_GE(rep.penetration(i, j), 0.0);
          EXPECT_LE(rep.penetration(i, j), kEpsilon);
        }
        EXPECT_GE(rep.normalized(i, j), 0.0);
        EXPECT_LE(rep.normalized(i, j), 1.0);
      }
  }
}

TEST(SenseContacts, RowNormalizationExample) {
  ContactReport rep;
  rep.penetration.resize(2, 2);
  rep.penetration << 0.002, 0.004, 0.0, 0.0;
  normalize_and_grade(rep);
  EXPECT_NEAR(rep.normalized(0, 0), 0.5, kTight);
  EXPECT_NEAR(rep.normalized(0, 1), 1.0, kTight);
  EXPECT_NEAR(rep.grasp[0], 1.5, kTight);
  // all-zero row stays zero instead of dividing by zero
  EXPECT_DOUBLE_EQ(rep.normalized(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(rep.grasp[1], 0.0);
}

TEST(SenseContacts, GraspBounds) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    ContactReport rep;
    rep.penetration = Eigen::MatrixXd::Zero(5, 9);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 9; ++j)
        if (rng.uniform() < 0.5)
          rep.penetration(i, j) = rng.uniform(0.0, kEpsilon);
    normalize_and_grade(rep);
    for (int i = 0; i < 5; ++i) {
      EXPECT_GE(rep.grasp[i], 0.0);
      EXPECT_LE(rep.grasp[i], 9.0 + kTight);
    }
  }
}

// adding one shared offset to every touching sensor (contacts fixed) must
// not lower any grasp quality
TEST(SenseContacts, UniformDeeperContactNeverLowersGrasp) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    ContactReport a;
    a.penetration = Eigen::MatrixXd::Zero(5, 9);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 9; ++j)
        if (rng.uniform() < 0.4)
          a.penetration(i, j) = rng.uniform(1e-4, 0.5 * kEpsilon);
    ContactReport b = a;
    const double delta = rng.uniform(0.0, 0.4 * kEpsilon);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 9; ++j)
        if (b.penetration(i, j) > 0.0) b.penetration(i, j) += delta;
    normalize_and_grade(a);
    normalize_and_grade(b);
    EXPECT_GE(b.grasp.sum(), a.grasp.sum() - 1e-12);
  }
}

TEST(SenseContacts, RigidRotationEquivariance) {
  Rng rng(17);
  const auto f = make_lid_frames(LidShape::kSquare, 0.04, 8);
  TactileArray t;
  t.fingers = 2;
  t.per_finger = 4;
  t.points.resize(3, 8);
  for (int i = 0; i < 8; ++i)
    t.points.col(i) = Vec3(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05),
                           rng.uniform(-0.01, 0.01));
  const auto base = sense_contacts(t, f, kEpsilon);

  const Eigen::Matrix3d r =
      Eigen::AngleAxisd(1.234, Vec3::UnitZ()).toRotationMatrix();
  ContactFrameSet fr = f;
  fr.points = r * f.points;
  TactileArray tr = t;
  tr.points = r * t.points;
  const auto rot = sense_contacts(tr, fr, kEpsilon);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j)
      EXPECT_NEAR(rot.distance(i, j), base.distance(i, j), kTight);
}

TEST(SenseContacts, InputValidation) {
  const auto f = make_lid_frames(LidShape::kCylinder, 0.04, 8);
  TactileArray t = one_finger_at({Vec3(0.04, 0.0, 0.0)});
  EXPECT_THROW(sense_contacts(t, f, 0.0), ConfigError);
  t.points(0, 0) = std::nan("");
  EXPECT_THROW(sense_contacts(t, f, kEpsilon), InputError);
}

TEST(ReleaseFlags, StrictVsLiteral) {
  const std::vector<bool> prev = {true, true, false, false};
  const std::vector<bool> cur = {false, true, true, false};
  const auto strict = release_flags(prev, cur, ReleaseMode::kStrict);
  EXPECT_EQ(strict, (std::vector<bool>{true, false, false, false}));
  const auto literal = release_flags(prev, cur, ReleaseMode::kLiteral);
  EXPECT_EQ(literal, (std::vector<bool>{true, true, false, false}));
}

TEST(ReleaseFlags, FirstStepAllFalse) {
  // episode start: no previous contact recorded yet
  const std::vector<bool> prev(5, false);
  const std::vector<bool> cur = {true, false, true, true, false};
  const auto strict = release_flags(prev, cur, ReleaseMode::kStrict);
  for (bool b : strict) EXPECT_FALSE(b);
}

TEST(ReleaseFlags, SizeMismatchIsInputError) {
  EXPECT_THROW(release_flags({true}, {true, false}, ReleaseMode::kStrict),
               InputError);
}

}  // namespace
}  // namespace tacspin
