// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cmath>

#include "tacspin/common.hpp"
#include "tacspin/geometry.hpp"

namespace tacspin {

// One-dof lid with Coulomb stick-slip plus viscous damping. Angles are the
// lid's opening coordinate (see ContactFrameSet for the sign convention).
// friction_scale is the dimensionless draw from the randomization range; the
// actual breakaway torque is friction_scale * base_torque.
struct LidParams {
  double inertia = 2e-4;         // kg m^2
  double base_torque = 0.003;    // N m, tau_0; friction multiplies this
  double damping_coeff = 3.0;    // dimensionless, viscous b = coeff * tau_0
  double stiffness_coeff = 0.5;  // carried for config fidelity, no spring here
  double rim_radius = 0.04;      // m

  double damping() const { return damping_coeff * base_torque; }
};

struct LidState {
  double angle = 0.0;           // rad, cumulative (never wrapped)
  double rate = 0.0;            // rad/s
  double friction_scale = 1.2;  // dimensionless multiplier on base_torque
  Vec3 axis = Vec3(0.0, 0.0, 1.0);

  double breakaway(const LidParams& p) const {
    return friction_scale * p.base_torque;
  }
};

inline double sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Virtual torque from tactile state: kappa * sum_i G_i * w_i^z with
// w_i = v_i x p_i and p_i the lid-center-to-fingertip vector. Only the
// z component acts on the single dof.
inline double virtual_torque(const Eigen::Matrix3Xd& tip_velocity,
                             const Eigen::Matrix3Xd& tip_position,
                             const Vec3& lid_center,
                             const Eigen::VectorXd& grasp, double kappa) {
  const auto n = tip_position.cols();
  if (tip_velocity.cols() != n || grasp.size() != n)
    throw InputError("fingertip count mismatch in virtual torque");
  double tau = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3 p = tip_position.col(i) - lid_center;
    const Vec3 w = tip_velocity.col(i).cross(p);
    tau += grasp[i] * w.z();
  }
  return kappa * tau;
}

// Semi-explicit stick-slip step. From rest the lid moves only if the applied
// torque strictly exceeds the breakaway threshold; while sliding, kinetic
// friction of the same magnitude opposes the motion and a zero crossing
// caused inside a step clamps the rate to zero rather than reversing it.
// Integration: rate' = rate + dt*(tau - b*rate - mu*sign)/I, angle' += dt*rate'.
inline void step_lid(LidState& lid, const LidParams& p, double tau,
                     double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!std::isfinite(tau)) throw InputError("non-finite lid torque");

  const double mu = lid.breakaway(p);
  const double b = p.damping();

  if (lid.rate == 0.0) {
    if (std::abs(tau) <= mu) {
      // stuck: static friction absorbs the applied torque
      return;
    }
    const double net = tau - sign_of(tau) * mu;
    lid.rate = dt * net / p.inertia;
  } else {
    const double net = tau - b * lid.rate - sign_of(lid.rate) * mu;
    const double next = lid.rate + dt * net / p.inertia;
    // friction may stop the lid within the step but never spin it backwards
    lid.rate = (next * lid.rate < 0.0) ? 0.0 : next;
  }
  lid.angle += dt * lid.rate;
}

// Coupling gain sized at a nominal operating point: n_stance fingers holding
// grasp quality g_ref while sweeping at omega_ref must balance worst-case
// breakaway plus viscous drag at omega_ref, with margin to spare. Any kappa
// at or above this sustains rotation at the nominal point, and it exceeds
// the bare breakaway threshold by construction.
struct CouplingCalibration {
  double n_stance = 3.0;
  double g_ref = 3.0;        // grasp quality per stance finger
  double omega_ref = 3.5;    // rad/s target lid rate
  double friction_max = 1.5; // worst multiplier in the randomization range
  double safety = 1.6;
};

inline double calibrate_coupling_gain(const LidParams& p,
                                      const CouplingCalibration& c,
                                      double moment_arm) {
  if (moment_arm <= 0.0) throw ConfigError("moment arm must be positive");
  const double demand =
      c.friction_max * p.base_torque + p.damping() * c.omega_ref;
  // per finger: w^z = (omega_ref * arm) * arm for a tangential sweep
  const double supply = c.n_stance * c.g_ref * c.omega_ref * moment_arm * moment_arm;
  if (supply <= 0.0) throw ConfigError("degenerate calibration point");
  return c.safety * demand / supply;
}

}  // namespace tacspin
