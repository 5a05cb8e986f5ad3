// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cmath>
#include <string>
#include <vector>

#include "tacspin/common.hpp"

namespace tacspin {

enum class LidShape { kCylinder, kSquare, kHexagon };

inline LidShape parse_shape(const std::string& name) {
  if (name == "cylinder") return LidShape::kCylinder;
  if (name == "square") return LidShape::kSquare;
  if (name == "hexagon") return LidShape::kHexagon;
  throw ConfigError("unknown lid shape: " + name);
}

inline const char* shape_name(LidShape s) {
  switch (s) {
    case LidShape::kCylinder: return "cylinder";
    case LidShape::kSquare: return "square";
    case LidShape::kHexagon: return "hexagon";
  }
  return "?";
}

// Virtual contact frames pinned to the lid rim, expressed in the lid-centered
// base frame (rim plane at z = 0). The lid coordinate advances in the
// direction a positive moment w = v x p drives, which about a +z axis is
// clockwise seen from above; at_angle() therefore rotates by -angle so the
// frames travel with fingertips that push the lid open.
struct ContactFrameSet {
  Eigen::Matrix3Xd points;            // one column per frame point
  Vec3 axis = Vec3(0.0, 0.0, 1.0);    // lid rotation axis, unit

  int count() const { return static_cast<int>(points.cols()); }

  ContactFrameSet at_angle(double lid_angle) const {
    ContactFrameSet out = *this;
    const Eigen::Matrix3d r =
        Eigen::AngleAxisd(-lid_angle, axis).toRotationMatrix();
    out.points = r * points;
    return out;
  }
};

// Frame points sit on the rim outline at equally spaced azimuths. For the
// cylinder that outline is the circle of rim_radius; for square/hexagon it is
// the regular polygon with circumradius rim_radius, oriented with a face
// midpoint at azimuth zero. With count = faces the points land exactly on
// the face midpoints, with count = 2*faces the corners join in as well.
inline ContactFrameSet make_lid_frames(LidShape shape, double rim_radius,
                                       int count) {
  if (rim_radius <= 0.0) throw ConfigError("rim_radius must be positive");
  if (count < 1) throw ConfigError("need at least one rim frame point");

  int faces = 0;
  if (shape == LidShape::kSquare) faces = 4;
  if (shape == LidShape::kHexagon) faces = 6;

  ContactFrameSet out;
  out.points.resize(3, count);
  for (int i = 0; i < count; ++i) {
    const double theta = 2.0 * M_PI * i / count;
    double r = rim_radius;
    if (faces > 0) {
      const double sector = 2.0 * M_PI / faces;
      // offset from the nearest face midpoint, in [-sector/2, sector/2]
      double d = std::remainder(theta, sector);
      const double apothem = rim_radius * std::cos(M_PI / faces);
      r = apothem / std::cos(d);
    }
    out.points.col(i) = Vec3(r * std::cos(theta), r * std::sin(theta), 0.0);
  }
  return out;
}

// Sensor points for all fingers, world frame. Column layout is
// finger-major: column f*per_finger + j is sensor j of finger f.
struct TactileArray {
  int fingers = 0;
  int per_finger = 0;
  Eigen::Matrix3Xd points;

  const Eigen::Block<const Eigen::Matrix3Xd> finger(int f) const {
    return points.block(0, f * per_finger, 3, per_finger);
  }
};

inline double nearest_distance(const Vec3& p, const ContactFrameSet& frames) {
  if (frames.count() == 0) throw ConfigError("empty contact frame set");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < frames.count(); ++i) {
    const double sq = (frames.points.col(i) - p).squaredNorm();
    if (sq < best) best = sq;
  }
  return std::sqrt(best);
}

// Per-step contact summary: raw nearest distances, thresholded penetrations,
// the per-finger row-max normalization, and the grasp quality sums.
struct ContactReport {
  Eigen::MatrixXd distance;     // fingers x per_finger, raw nearest distance
  Eigen::MatrixXd penetration;  // distance where distance <= epsilon, else 0
  Eigen::MatrixXd normalized;   // penetration / row max, zero row stays zero
  Eigen::VectorXd grasp;        // G_i = row sum of normalized, in [0, k]
  std::vector<bool> contact;    // any sensor of finger i within epsilon
  double max_distance = 0.0;    // max over all sensors, feeds termination
};

// Row-max normalization applied to a thresholded penetration matrix. Split
// out so reward tests can drive it with synthetic matrices.
inline void normalize_and_grade(ContactReport& rep) {
  const auto rows = rep.penetration.rows();
  const auto cols = rep.penetration.cols();
  rep.normalized.resize(rows, cols);
  rep.grasp.resize(rows);
  for (Eigen::Index f = 0; f < rows; ++f) {
    const double m = rep.penetration.row(f).maxCoeff();
    if (m > 0.0) {
      rep.normalized.row(f) = rep.penetration.row(f) / m;
    } else {
      rep.normalized.row(f).setZero();
    }
    rep.grasp[f] = rep.normalized.row(f).sum();
  }
}

inline ContactReport sense_contacts(const TactileArray& tac,
                                    const ContactFrameSet& frames,
                                    double epsilon) {
  if (epsilon <= 0.0) throw ConfigError("contact epsilon must be positive");
  if (tac.fingers <= 0 || tac.per_finger <= 0)
    throw ConfigError("tactile array has no sensors");
  if (!tac.points.allFinite()) throw InputError("non-finite sensor point");

  ContactReport rep;
  rep.distance.resize(tac.fingers, tac.per_finger);
  rep.penetration.resize(tac.fingers, tac.per_finger);
  rep.contact.assign(tac.fingers, false);
  rep.max_distance = 0.0;
  for (int f = 0; f < tac.fingers; ++f) {
    for (int j = 0; j < tac.per_finger; ++j) {
      const double d =
          nearest_distance(tac.points.col(f * tac.per_finger + j), frames);
      rep.distance(f, j) = d;
      rep.penetration(f, j) = (d <= epsilon) ? d : 0.0;
      if (d <= epsilon) rep.contact[f] = true;
      if (d > rep.max_distance) rep.max_distance = d;
    }
  }
  normalize_and_grade(rep);
  return rep;
}

enum class ReleaseMode { kStrict, kLiteral };

// Release flags for the release reward. Strict mode flags the transition
// (touching last step, not touching now); literal mode flags plain previous-
// step contact. First step of an episode has no previous report, so callers
// pass prev as all-false there.
inline std::vector<bool> release_flags(const std::vector<bool>& prev,
                                       const std::vector<bool>& cur,
                                       ReleaseMode mode) {
  if (prev.size() != cur.size())
    throw InputError("contact flag count mismatch");
  std::vector<bool> out(cur.size(), false);
  for (std::size_t i = 0; i < cur.size(); ++i) {
    out[i] = (mode == ReleaseMode::kStrict) ? (prev[i] && !cur[i]) : prev[i];
  }
  return out;
}

}  // namespace tacspin
