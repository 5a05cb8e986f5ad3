// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "tacspin/common.hpp"
#include "tacspin/geometry.hpp"
#include "tacspin/hand.hpp"
#include "tacspin/lid.hpp"

namespace tacspin {

// Scripted release-and-regrasp schedule. Fingers cycle through stance
// (pressed on the rim, yaw sweeping in the opening direction) and swing
// (lifted clear, yaw returning). Phase offsets stagger the fingers so a
// majority keeps contact while the rest reset.
struct GaitSchedule {
  int period = 48;      // steps per cycle
  double duty = 0.5;    // stance fraction of the cycle
  double amp = 0.70;    // yaw half-sweep, rad
  bool reversed = false;  // flips the sweep (and hence rotation) direction
  double action_gain = 2.0;  // proportional gain from target error to action
  double eta_scale = 0.075;  // eta * action_scale of the hand it drives

  std::vector<double> phase_offset;          // steps, one per finger
  std::vector<double> yaw_center;            // rad, one per finger
  std::vector<Eigen::VectorXd> press_pose;   // full chain targets, pressed
  std::vector<Eigen::VectorXd> lift_pose;    // full chain targets, lifted

  int finger_count() const { return static_cast<int>(phase_offset.size()); }

  void validate() const {
    const int n = finger_count();
    if (n < 1) throw ConfigError("gait schedule has no fingers");
    if (period < 2) throw ConfigError("gait period too short");
    if (!(duty > 0.0 && duty < 1.0))
      throw ConfigError("gait duty must be in (0,1)");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double d = std::fmod(
            std::abs(phase_offset[i] - phase_offset[j]), double(period));
        if (d < 0.5)
          throw ConfigError("gait phases must be distinct modulo period");
      }
  }
};

// Builds the default schedule for a hand/lid pairing. Stance presses with
// the same planar solve the pre-grasp uses; swing lifts the tip lift_height
// above the rim so contact breaks cleanly but stays far inside the episode
// escape radius. The default period/duty/amp triple keeps both the stance
// sweep and the swing return near 3.5 rad/s: fast enough that the driven lid
// beats the cylinder time limit with margin, slow enough that the rate cap
// and the action smoothing can still track the return stroke.
inline GaitSchedule make_gait(const FingerKinematics& kin,
                              const HandParams& params,
                              const ContactFrameSet& frames, int period = 48,
                              double duty = 0.5, double amp = 0.70,
                              double lift_height = 0.014) {
  GaitSchedule g;
  g.period = period;
  g.duty = duty;
  g.amp = amp;
  g.eta_scale = params.eta * params.action_scale;

  const Eigen::VectorXd press_all = pregrasp_pose(kin, params, frames);
  const int nf = kin.finger_count();
  for (int f = 0; f < nf; ++f) {
    const auto& chain = kin.fingers[f];
    const Eigen::VectorXd press =
        press_all.segment(kin.joint_offset(f), chain.dof());

    g.phase_offset.push_back(double(f) * period / nf);
    // keep the sweep inside the yaw limits with a little slack
    const double span = chain.joints[0].hi - amp - 0.02;
    g.yaw_center.push_back(std::clamp(press[0], -span, span));

    // the press radius is whatever the pre-grasp solve landed on
    const Eigen::Isometry3d tip = fingertip_pose(kin, press_all, f);
    const double radial = tip.translation().head<2>().norm();
    g.press_pose.push_back(press);
    Eigen::VectorXd lift = solve_press_pitch(chain, radial, lift_height,
                                             chain.base.z(), 0.0);
    lift[0] = 0.0;  // yaw is driven separately
    g.lift_pose.push_back(lift);
  }
  g.validate();
  return g;
}

// Desired joint vector for step t: piecewise-linear yaw sweep plus the
// press/lift pitch poses.
inline Eigen::VectorXd gait_targets(const GaitSchedule& g,
                                    const FingerKinematics& kin, long t) {
  Eigen::VectorXd q_des(kin.total_dof());
  const double dir = g.reversed ? -1.0 : 1.0;
  for (int f = 0; f < kin.finger_count(); ++f) {
    const auto& chain = kin.fingers[f];
    const double u =
        std::fmod(double(t) + g.phase_offset[f], double(g.period)) /
        double(g.period);
    Eigen::VectorXd qf;
    double yaw;
    if (u < g.duty) {
      // stance: pressed, sweeping from +amp to -amp (the opening direction)
      const double s = u / g.duty;
      yaw = g.yaw_center[f] + dir * g.amp * (1.0 - 2.0 * s);
      qf = g.press_pose[f];
    } else {
      // swing: lifted, returning for the next stroke
      const double s = (u - g.duty) / (1.0 - g.duty);
      yaw = g.yaw_center[f] + dir * g.amp * (2.0 * s - 1.0);
      qf = g.lift_pose[f];
    }
    qf[0] = std::clamp(yaw, chain.joints[0].lo, chain.joints[0].hi);
    q_des.segment(kin.joint_offset(f), chain.dof()) = qf;
  }
  return q_des;
}

// The scripted policy: a proportional pull of q_target toward the gait's
// desired pose, expressed in action units and clipped to the action box.
// Closed loop on q_target, so injected action noise cannot accumulate.
inline Eigen::VectorXd gait_action(const HandState& state, const LidState& lid,
                                   const GaitSchedule& g,
                                   const FingerKinematics& kin, long t) {
  (void)lid;  // open loop in the lid; kept in the signature for symmetry
  g.validate();
  const Eigen::VectorXd q_des = gait_targets(g, kin, t);
  const Eigen::VectorXd err = q_des - state.q_target;
  return (g.action_gain / g.eta_scale * err)
      .cwiseMax(-1.0)
      .cwiseMin(1.0);
}

}  // namespace tacspin
