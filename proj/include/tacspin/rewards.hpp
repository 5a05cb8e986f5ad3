// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <vector>

#include "tacspin/common.hpp"
#include "tacspin/geometry.hpp"
#include "tacspin/lid.hpp"

namespace tacspin {

// Term weights. Defaults are the trained configuration; penalties keep
// positive weights and the penalty terms themselves are <= 0.
struct RewardWeights {
  double cpr = 8.0;      // contact pressure
  double crr = 2.0;      // contact release
  double rr = 850.0;     // rotation
  double angle = 20.0;   // axis-misalignment penalty
  double action = 0.001; // action magnitude penalty
  double work = 1.0;     // mechanical work penalty
  double gaiting = 8.0;  // gaiting direction term
  double baseline_distance = 1.0;  // stand-in distance reward weight
};

// Which task-reward composition trains. cpr_rr / crr_rr drop one contact
// term each; baseline swaps the contact terms for a fingertip-to-rim
// distance stand-in. Penalty terms are kept by every set.
enum class RewardSet { kTac2Motion, kCprRr, kCrrRr, kBaseline };

inline RewardSet parse_reward_set(const std::string& name) {
  if (name == "tac2motion") return RewardSet::kTac2Motion;
  if (name == "cpr_rr") return RewardSet::kCprRr;
  if (name == "crr_rr") return RewardSet::kCrrRr;
  if (name == "baseline") return RewardSet::kBaseline;
  throw ConfigError("unknown reward set: " + name);
}

inline const char* reward_set_name(RewardSet s) {
  switch (s) {
    case RewardSet::kTac2Motion: return "tac2motion";
    case RewardSet::kCprRr: return "cpr_rr";
    case RewardSet::kCrrRr: return "crr_rr";
    case RewardSet::kBaseline: return "baseline";
  }
  return "?";
}

enum class WorkForm { kPerJoint, kInnerProduct };

// ---------- individual terms, all pure ---------- //

// sum of grasp qualities, i.e. the double sum over normalized penetrations
inline double contact_pressure_reward(const ContactReport& rep) {
  return rep.grasp.sum();
}

inline double contact_release_reward(const std::vector<bool>& released) {
  double r = 0.0;
  for (bool b : released) r += b ? 1.0 : 0.0;
  return r;
}

inline double rotation_reward(const ContactReport& rep, double d_angle) {
  return rep.grasp.sum() * d_angle;
}

// -arccos of the axis alignment, clamped into acos domain; in [-pi, 0]
inline double angle_penalty(const Vec3& lid_axis, const Vec3& desired_axis) {
  const double na = lid_axis.norm();
  const double nb = desired_axis.norm();
  if (na <= 0.0 || nb <= 0.0) throw InputError("zero-length axis");
  double c = lid_axis.dot(desired_axis) / (na * nb);
  c = std::clamp(c, -1.0, 1.0);
  return -std::acos(c);
}

inline double action_penalty(const Eigen::VectorXd& a) {
  return -a.squaredNorm();
}

// Mechanical-work penalty. Per-joint form sums |tau_i * dq_i|; the
// alternative treats tau and dq as vectors and takes |<tau, dq>|.
inline double work_penalty(const Eigen::VectorXd& tau,
                           const Eigen::VectorXd& dq, WorkForm form) {
  if (tau.size() != dq.size()) throw InputError("tau/dq size mismatch");
  if (form == WorkForm::kInnerProduct) return -std::abs(tau.dot(dq));
  return -tau.cwiseProduct(dq).cwiseAbs().sum();
}

// sum_i sign(w_i^z) * G_i with w = v x p, p from lid center to fingertip;
// sign(0) contributes nothing.
inline double gaiting_term(const Eigen::Matrix3Xd& tip_velocity,
                           const Eigen::Matrix3Xd& tip_position,
                           const Vec3& lid_center,
                           const Eigen::VectorXd& grasp) {
  const auto n = tip_position.cols();
  if (tip_velocity.cols() != n || grasp.size() != n)
    throw InputError("fingertip count mismatch in gaiting term");
  double r = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3 p = tip_position.col(i) - lid_center;
    const Vec3 w = tip_velocity.col(i).cross(p);
    r += sign_of(w.z()) * grasp[i];
  }
  return r;
}

// Baseline stand-in: negative mean fingertip distance to the rim circle
// (radius rim_radius in the z = center plane).
inline double rim_distance_term(const Eigen::Matrix3Xd& tip_position,
                                const Vec3& lid_center, double rim_radius) {
  const auto n = tip_position.cols();
  if (n == 0) throw InputError("no fingertips");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3 d = tip_position.col(i) - lid_center;
    const double radial = d.head<2>().norm() - rim_radius;
    acc += std::sqrt(radial * radial + d.z() * d.z());
  }
  return -acc / static_cast<double>(n);
}

// ---------- per-step record and composition ---------- //

// Raw (unweighted) terms for one step plus the composed results. Everything
// is recorded regardless of the active set so traces stay comparable.
struct RewardBreakdown {
  double cpr = 0.0;
  double crr = 0.0;
  double rr = 0.0;
  double angle = 0.0;
  double action = 0.0;
  double work = 0.0;
  double gaiting = 0.0;
  double baseline_dist = 0.0;  // negative mean tip-to-rim distance
  double d_angle = 0.0;        // per-step lid rotation, also feeds metrics
  double composed = 0.0;       // task reward of the active set
  double final = 0.0;          // composed + weighted penalty terms
};

// Fills composed/final from the raw terms. The penalty block is common to
// all sets; the task block is what the ablation switches.
inline void compose_reward(RewardBreakdown& b, const RewardWeights& w,
                           RewardSet set) {
  switch (set) {
    case RewardSet::kTac2Motion:
      b.composed = w.cpr * b.cpr + w.crr * b.crr + w.rr * b.rr;
      break;
    case RewardSet::kCprRr:
      b.composed = w.cpr * b.cpr + w.rr * b.rr;
      break;
    case RewardSet::kCrrRr:
      b.composed = w.crr * b.crr + w.rr * b.rr;
      break;
    case RewardSet::kBaseline:
      b.composed = w.baseline_distance * b.baseline_dist + w.rr * b.d_angle;
      break;
  }
  b.final = b.composed + w.angle * b.angle + w.action * b.action +
            w.work * b.work + w.gaiting * b.gaiting;
}

}  // namespace tacspin
