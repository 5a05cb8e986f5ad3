// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cmath>
#include <string>
#include <vector>

#include "tacspin/common.hpp"
#include "tacspin/geometry.hpp"

namespace tacspin {

inline double wrap_angle(double a) { return std::remainder(a, 2.0 * M_PI); }

// One revolute joint: rotation about a fixed local axis, then a straight
// link segment along local +x to the next joint.
struct JointSpec {
  Vec3 axis = Vec3(0.0, 0.0, 1.0);
  double link = 0.0;  // m
  double lo = -1.5;
  double hi = 1.5;
};

// Serial finger chain. Base sits on the hand hub; mount_azimuth orients the
// chain's local +x radially outward at that azimuth.
struct FingerChain {
  Vec3 base = Vec3::Zero();
  double mount_azimuth = 0.0;
  std::vector<JointSpec> joints;

  int dof() const { return static_cast<int>(joints.size()); }
};

// Hand geometry profile plus the sensor cap layout. Fingers hang from a hub
// on the lid axis; every chain leads with a yaw joint about the hub axis
// (so yaw moves the fingertip tangentially at constant radius) followed by
// pitch joints that curl the finger in its vertical plane.
struct FingerKinematics {
  std::string profile = "deskhand-v1";
  std::vector<FingerChain> fingers;
  double cap_radius = 0.008;       // sensor cap sphere radius, m
  int sensors_per_finger = 9;      // perfect square, laid out as a grid
  double grid_fraction = 0.55;     // grid half-extent as fraction of cap

  int finger_count() const { return static_cast<int>(fingers.size()); }
  int total_dof() const {
    int n = 0;
    for (const auto& f : fingers) n += f.dof();
    return n;
  }
  int joint_offset(int finger) const {
    int n = 0;
    for (int i = 0; i < finger; ++i) n += fingers[i].dof();
    return n;
  }
};

// Control and cap parameters that ride in the hand config section.
struct HandParams {
  double beta_ema = 0.8;      // smoothing EMA(a) = beta*prev + (1-beta)*a
  double eta = 0.75;          // target increment gain
  double action_scale = 0.1;  // rad per unit smoothed action
  double rate_limit = 6.0;    // rad/s cap on joint motion
  double track_gain = 0.6;    // first-order pull toward the target per step
  double pd_gain = 3.0;       // synthetic torque for the work penalty
  double pd_damping = 0.05;
  double hub_height = 0.07;   // m above the rim plane
  double press_range = 0.0065;  // tip-center standoff from a rim point when pressed
  std::string profile = "deskhand-v1";
};

// The versioned built-in geometry. Five chains, 5+4+4+4+5 = 22 actuated
// joints, mounted 72 degrees apart.
inline FingerKinematics make_hand_profile(const HandParams& p) {
  if (p.profile != "deskhand-v1")
    throw ConfigError("unknown hand profile: " + p.profile);
  FingerKinematics kin;
  kin.profile = p.profile;

  const double yaw_lim = 0.8;
  const double pitch_lo = -0.6;
  const double pitch_hi = 1.9;
  auto chain = [&](double azimuth, const std::vector<double>& links) {
    FingerChain f;
    f.base = Vec3(0.0, 0.0, p.hub_height);
    f.mount_azimuth = azimuth;
    JointSpec yaw;
    yaw.axis = Vec3(0.0, 0.0, 1.0);
    yaw.link = 0.0;
    yaw.lo = -yaw_lim;
    yaw.hi = yaw_lim;
    f.joints.push_back(yaw);
    for (double l : links) {
      JointSpec pitch;
      pitch.axis = Vec3(0.0, 1.0, 0.0);  // +pitch curls the link downward
      pitch.link = l;
      pitch.lo = pitch_lo;
      pitch.hi = pitch_hi;
      f.joints.push_back(pitch);
    }
    return f;
  };

  const std::vector<double> long_links = {0.042, 0.034, 0.027, 0.020};
  const std::vector<double> short_links = {0.048, 0.038, 0.028};
  for (int i = 0; i < 5; ++i) {
    const double az = M_PI / 2.0 + i * 2.0 * M_PI / 5.0;
    kin.fingers.push_back(
        chain(az, (i == 0 || i == 4) ? long_links : short_links));
  }
  if (kin.total_dof() != 22) throw ConfigError("profile dof mismatch");
  return kin;
}

// Joint-space state. q_target is the integrated desired position the EMA
// pipeline writes; q_prev backs the finite-difference fingertip velocities.
struct HandState {
  Eigen::VectorXd q;
  Eigen::VectorXd q_prev;
  Eigen::VectorXd qdot;
  Eigen::VectorXd q_target;
  Eigen::VectorXd ema;
  Eigen::VectorXd tau;

  static HandState zeros(int n) {
    HandState s;
    s.q = Eigen::VectorXd::Zero(n);
    s.q_prev = s.q;
    s.qdot = s.q;
    s.q_target = s.q;
    s.ema = s.q;
    s.tau = s.q;
    return s;
  }
};

inline void clamp_to_limits(Eigen::VectorXd& q, const FingerKinematics& kin) {
  int i = 0;
  for (const auto& f : kin.fingers)
    for (const auto& j : f.joints) {
      q[i] = std::clamp(q[i], j.lo, j.hi);
      ++i;
    }
}

// Action in, target out: clip to [-1,1], smooth, integrate the target by
// eta * EMA(a) * scale, clamp to joint limits.
inline void apply_action(HandState& s, const FingerKinematics& kin,
                         const HandParams& p,
                         const Eigen::VectorXd& action) {
  if (action.size() != s.q.size()) throw InputError("action size mismatch");
  if (!action.allFinite()) throw InputError("non-finite action");
  const Eigen::VectorXd a = action.cwiseMax(-1.0).cwiseMin(1.0);
  s.ema = p.beta_ema * s.ema + (1.0 - p.beta_ema) * a;
  s.q_target += p.eta * p.action_scale * s.ema;
  clamp_to_limits(s.q_target, kin);
}

// First-order tracking toward q_target under the rate limit, plus the
// synthetic PD torque consumed by the work penalty.
inline void step_joints(HandState& s, const FingerKinematics& kin,
                        const HandParams& p, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  (void)kin;
  s.q_prev = s.q;
  const double cap = p.rate_limit * dt;
  Eigen::VectorXd dq = p.track_gain * (s.q_target - s.q);
  dq = dq.cwiseMax(-cap).cwiseMin(cap);
  s.q += dq;
  s.qdot = dq / dt;
  s.tau = p.pd_gain * (s.q_target - s.q) - p.pd_damping * s.qdot;
}

// Sensor grid in the tip frame: points on the cap sphere biased toward the
// +x hemisphere, sqrt(k) x sqrt(k) over lateral offsets.
inline Eigen::Matrix3Xd cap_grid(double cap_radius, int k,
                                 double grid_fraction) {
  const int side = static_cast<int>(std::round(std::sqrt(double(k))));
  if (side * side != k)
    throw ConfigError("sensors_per_finger must be a perfect square");
  const double g = grid_fraction * cap_radius;
  Eigen::Matrix3Xd pts(3, k);
  int c = 0;
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b) {
      const double u = (side == 1) ? 0.0 : -g + 2.0 * g * a / (side - 1);
      const double v = (side == 1) ? 0.0 : -g + 2.0 * g * b / (side - 1);
      const double x2 = cap_radius * cap_radius - u * u - v * v;
      pts.col(c++) = Vec3(std::sqrt(std::max(x2, 0.0)), u, v);
    }
  return pts;
}

struct HandFk {
  TactileArray sensors;
  Eigen::Matrix3Xd tips;     // 3 x fingers
  Eigen::Matrix3Xd tip_vel;  // 3 x fingers, finite difference over dt
};

namespace detail {

// Chain transform walk; returns the tip pose and optionally per-joint world
// axes/origins for the Jacobian.
inline Eigen::Isometry3d chain_pose(const FingerChain& f,
                                    const Eigen::Ref<const Eigen::VectorXd>& q,
                                    std::vector<Vec3>* axes = nullptr,
                                    std::vector<Vec3>* origins = nullptr) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translate(f.base);
  t.rotate(Eigen::AngleAxisd(f.mount_azimuth, Vec3::UnitZ()));
  for (int i = 0; i < f.dof(); ++i) {
    if (axes) axes->push_back(t.linear() * f.joints[i].axis);
    if (origins) origins->push_back(t.translation());
    t.rotate(Eigen::AngleAxisd(q[i], f.joints[i].axis));
    t.translate(Vec3(f.joints[i].link, 0.0, 0.0));
  }
  return t;
}

}  // namespace detail

inline Eigen::Isometry3d fingertip_pose(const FingerKinematics& kin,
                                        const Eigen::VectorXd& q, int finger) {
  const int off = kin.joint_offset(finger);
  const auto& f = kin.fingers[finger];
  return detail::chain_pose(f, q.segment(off, f.dof()));
}

// Geometric Jacobian of the fingertip position wrt that finger's joints.
inline Eigen::MatrixXd fingertip_jacobian(const FingerKinematics& kin,
                                          const Eigen::VectorXd& q,
                                          int finger) {
  const int off = kin.joint_offset(finger);
  const auto& f = kin.fingers[finger];
  std::vector<Vec3> axes, origins;
  const Eigen::Isometry3d tip =
      detail::chain_pose(f, q.segment(off, f.dof()), &axes, &origins);
  Eigen::MatrixXd jac(3, f.dof());
  for (int i = 0; i < f.dof(); ++i)
    jac.col(i) = axes[i].cross(tip.translation() - origins[i]);
  return jac;
}

inline void fk_positions(const FingerKinematics& kin, const Eigen::VectorXd& q,
                         Eigen::Matrix3Xd& tips, TactileArray* sensors) {
  const int nf = kin.finger_count();
  tips.resize(3, nf);
  const Eigen::Matrix3Xd cap =
      sensors ? cap_grid(kin.cap_radius, kin.sensors_per_finger,
                         kin.grid_fraction)
              : Eigen::Matrix3Xd();
  if (sensors) {
    sensors->fingers = nf;
    sensors->per_finger = kin.sensors_per_finger;
    sensors->points.resize(3, nf * kin.sensors_per_finger);
  }
  for (int f = 0; f < nf; ++f) {
    const Eigen::Isometry3d tip = fingertip_pose(kin, q, f);
    tips.col(f) = tip.translation();
    if (sensors) {
      for (int j = 0; j < kin.sensors_per_finger; ++j)
        sensors->points.col(f * kin.sensors_per_finger + j) =
            tip * Vec3(cap.col(j));
    }
  }
}

// Sensors and tips at q, velocities by finite difference against q_prev.
inline HandFk forward_kinematics(const FingerKinematics& kin,
                                 const HandState& s, double dt) {
  if (s.q.size() != kin.total_dof()) throw InputError("state dof mismatch");
  HandFk fk;
  fk_positions(kin, s.q, fk.tips, &fk.sensors);
  Eigen::Matrix3Xd prev_tips;
  fk_positions(kin, s.q_prev, prev_tips, nullptr);
  fk.tip_vel = (fk.tips - prev_tips) / dt;
  return fk;
}

// Solves the pitch joints so the tip, virtually extended by `extension`
// along its +x axis, lands on (radial, height) in the finger's plane.
// Damped Newton on the planar chain; deterministic and exact to tol.
inline Eigen::VectorXd solve_press_pitch(const FingerChain& f,
                                         double radial, double height,
                                         double hub_height, double extension,
                                         double tol = 1e-11) {
  const int np = f.dof() - 1;  // pitch joints
  if (np < 2) throw ConfigError("finger needs at least two pitch joints");
  std::vector<double> links;
  for (int i = 1; i < f.dof(); ++i) links.push_back(f.joints[i].link);
  links.back() += extension;

  Eigen::VectorXd th = Eigen::VectorXd::Constant(np, 0.35);
  for (int it = 0; it < 200; ++it) {
    // planar FK: direction angle is the running pitch sum, +down
    double phi = 0.0, x = 0.0, z = hub_height;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2, np);
    std::vector<double> cphi(np), sphi(np);
    for (int i = 0; i < np; ++i) {
      phi += th[i];
      cphi[i] = std::cos(phi);
      sphi[i] = std::sin(phi);
      x += links[i] * cphi[i];
      z -= links[i] * sphi[i];
    }
    // d(tip)/d(theta_i) accumulates over links at or beyond joint i
    for (int i = 0; i < np; ++i)
      for (int l = i; l < np; ++l) {
        jac(0, i) += -links[l] * sphi[l];
        jac(1, i) += -links[l] * cphi[l];
      }
    const Eigen::Vector2d err(radial - x, height - z);
    if (err.norm() < tol) {
      Eigen::VectorXd out(f.dof());
      out[0] = 0.0;
      out.tail(np) = th;
      return out;
    }
    const Eigen::Matrix2d jjt =
        jac * jac.transpose() + 1e-9 * Eigen::Matrix2d::Identity();
    th += jac.transpose() * jjt.ldlt().solve(err);
    for (int i = 0; i < np; ++i)
      th[i] = std::clamp(th[i], f.joints[i + 1].lo, f.joints[i + 1].hi);
  }
  throw ConfigError("press pose solve did not converge; target unreachable");
}

// Full-hand pose with every tip pressed toward its nearest rim frame point.
// Yaw aligns each tip's azimuth with the chosen frame point; pitch comes
// from the planar press solve with the tip extended by press_range, so the
// frame point ends up centered in the sensor cap's pocket.
inline Eigen::VectorXd pregrasp_pose(const FingerKinematics& kin,
                                     const HandParams& p,
                                     const ContactFrameSet& frames) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(kin.total_dof());
  for (int f = 0; f < kin.finger_count(); ++f) {
    const auto& chain = kin.fingers[f];
    // nearest frame azimuth reachable by yaw
    double best = 1e9, best_az = chain.mount_azimuth;
    double radial = 0.0;
    for (int i = 0; i < frames.count(); ++i) {
      const Vec3 pt = frames.points.col(i);
      const double az = std::atan2(pt.y(), pt.x());
      const double d = std::abs(wrap_angle(az - chain.mount_azimuth));
      if (d < best) {
        best = d;
        best_az = az;
        radial = pt.head<2>().norm();
      }
    }
    const double yaw = std::clamp(wrap_angle(best_az - chain.mount_azimuth),
                                  chain.joints[0].lo, chain.joints[0].hi);
    Eigen::VectorXd qf = solve_press_pitch(chain, radial, 0.0, chain.base.z(),
                                           p.press_range);
    qf[0] = yaw;
    q.segment(kin.joint_offset(f), chain.dof()) = qf;
  }
  return q;
}

}  // namespace tacspin
