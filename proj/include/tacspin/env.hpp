// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "tacspin/common.hpp"
#include "tacspin/config.hpp"
#include "tacspin/encoder.hpp"
#include "tacspin/geometry.hpp"
#include "tacspin/hand.hpp"
#include "tacspin/lid.hpp"
#include "tacspin/rewards.hpp"
#include "tacspin/rng.hpp"

namespace tacspin {

// One stepped transition. Carries everything traces, metrics, and the
// learner need so nobody has to re-derive state from the environment.
struct StepOut {
  Eigen::VectorXd obs;
  Eigen::VectorXd priv;
  RewardBreakdown reward;
  bool done = false;
  bool truncated = false;  // done by the step limit, not by failure
  std::string cause;       // "", "fingertip_distance", "timeout"
  double lid_angle = 0.0;
  double d_angle = 0.0;
  Eigen::VectorXd grasp;          // per-finger G
  std::vector<bool> contact;      // per-finger contact flags
  Eigen::VectorXd action_applied; // post-noise, post-clip
};

// Episode termination rule. Distance failure wins over the step budget when
// both hold on the same step; the distance bound is inclusive.
struct Termination {
  bool done = false;
  bool truncated = false;  // step budget, not failure
  const char* cause = "";
};

inline Termination check_termination(const ContactReport& rep, long step_count,
                                     double rho, long max_steps) {
  if (rep.max_distance >= rho) return {true, false, "fingertip_distance"};
  if (step_count >= max_steps) return {true, true, "timeout"};
  return {};
}

// The single-lid MDP. Fixed step order:
//   noise -> smoothing/targets -> joints -> kinematics -> contact ->
//   torque/lid -> rewards -> termination -> observation.
// Rewards read the post-dynamics lid angle so Delta q_lid is this step's.
class LidEnv {
 public:
  LidEnv(const RunConfig& cfg, const TactileEncoder* encoder,
         std::uint64_t stream_seed)
      : cfg_(cfg),
        kin_(cfg.make_kinematics()),
        frames_(make_lid_frames(cfg.shape_enum(), cfg.lid.rim_radius,
                                cfg.frames)),
        kappa_(cfg.resolved_kappa()),
        rng_(stream_seed),
        window_(cfg.enc_window, 5 * cfg.sensors_per_finger) {
    if (encoder) {
      enc_ = *encoder;
    } else if (cfg.enc_mode == "passthrough") {
      enc_ = TactileEncoder::make_passthrough(cfg.enc_window, 5,
                                              cfg.sensors_per_finger);
    } else {
      // an untrained encoder still defines the interface; training scripts
      // pass the pretrained one explicitly
      Rng init(mix_seed(cfg.seed, 0x7ac71e));
      enc_ = TactileEncoder::make_mlp(cfg.enc_window, 5,
                                      cfg.sensors_per_finger, cfg.enc_dim,
                                      cfg.enc_hidden, init);
    }
    if (enc_.window() != cfg.enc_window ||
        enc_.frame_dim() != 5 * cfg.sensors_per_finger)
      throw ConfigError("encoder shape does not match environment config");
    window_ = TactileWindow(enc_.window(), enc_.frame_dim());
    pregrasp_ = pregrasp_pose(kin_, cfg_.hand, frames_);
    reset();
  }

  int act_dim() const { return kin_.total_dof(); }
  int obs_dim() const { return 3 * kin_.total_dof() + enc_.latent_dim() + 3; }
  int priv_dim() const {
    return obs_dim() + 3 + 5 * cfg_.sensors_per_finger + 5;
  }

  Eigen::VectorXd reset() {
    const double f = cfg_.randomize
                         ? rng_.uniform(cfg_.friction_low, cfg_.friction_high)
                         : 0.5 * (cfg_.friction_low + cfg_.friction_high);
    return reset_with_friction(f);
  }

  // Pinned-friction reset for evaluation sweeps and dataset generation.
  // Uses the same jitter stream as reset() so the two stay comparable.
  Eigen::VectorXd reset_with_friction(double friction) {
    lid_ = LidState{};
    lid_.friction_scale = friction;
    hand_ = HandState::zeros(kin_.total_dof());
    hand_.q = pregrasp_;
    if (cfg_.randomize) {
      // small pose jitter; the pocket tolerates a few millimeters
      for (int i = 0; i < hand_.q.size(); ++i)
        hand_.q[i] += rng_.uniform(-0.02, 0.02);
      clamp_to_limits(hand_.q, kin_);
    }
    hand_.q_prev = hand_.q;
    hand_.q_target = hand_.q;
    window_.reset();
    steps_ = 0;
    done_ = false;
    // the pre-step contact state seeds the release-transition tracking
    const HandFk fk = forward_kinematics(kin_, hand_, cfg_.dt);
    const ContactReport rep =
        sense_contacts(fk.sensors, frames_.at_angle(lid_.angle), cfg_.epsilon);
    prev_contact_ = rep.contact;
    last_report_ = rep;
    build_observations(rep, fk);
    return obs_;
  }

  StepOut step(const Eigen::VectorXd& action) {
    if (done_) throw UsageError("step() on a finished episode; reset first");
    if (action.size() != act_dim()) throw InputError("action size mismatch");
    if (!action.allFinite()) throw InputError("non-finite action");

    StepOut out;

    // (1) action noise, drawn before clipping like any actuation error
    Eigen::VectorXd a = action;
    if (cfg_.randomize)
      a += cfg_.action_noise_std * rng_.normal_vector(act_dim());
    a = a.cwiseMax(-1.0).cwiseMin(1.0);
    out.action_applied = a;

    // (2) smoothing and target integration, (3) joint tracking
    apply_action(hand_, kin_, cfg_.hand, a);
    step_joints(hand_, kin_, cfg_.hand, cfg_.dt);

    // (4) forward kinematics and (5) contact sensing at the current lid pose
    const HandFk fk = forward_kinematics(kin_, hand_, cfg_.dt);
    const ContactReport rep =
        sense_contacts(fk.sensors, frames_.at_angle(lid_.angle), cfg_.epsilon);

    // (6) virtual torque, then the lid's stick-slip step
    const double tau = virtual_torque(fk.tip_vel, fk.tips, lid_center_,
                                      rep.grasp, kappa_);
    const double angle_before = lid_.angle;
    step_lid(lid_, cfg_.lid, tau, cfg_.dt);
    const double d_angle = lid_.angle - angle_before;

    // (7) rewards on the post-dynamics state
    RewardBreakdown rb;
    rb.cpr = contact_pressure_reward(rep);
    rb.crr = contact_release_reward(
        release_flags(prev_contact_, rep.contact, cfg_.release_mode_enum()));
    rb.rr = rotation_reward(rep, d_angle);
    rb.angle = angle_penalty(lid_.axis, cfg_.desired_axis);
    rb.action = action_penalty(a);
    rb.work = work_penalty(hand_.tau, hand_.q - hand_.q_prev,
                           cfg_.work_form_enum());
    rb.gaiting = gaiting_term(fk.tip_vel, fk.tips, lid_center_, rep.grasp);
    rb.baseline_dist =
        rim_distance_term(fk.tips, lid_center_, cfg_.lid.rim_radius);
    rb.d_angle = d_angle;
    compose_reward(rb, cfg_.weights, cfg_.reward_set_enum());

    // (8) termination
    ++steps_;
    const Termination term =
        check_termination(rep, steps_, cfg_.rho, cfg_.max_steps);
    done_ = term.done;
    out.truncated = term.truncated;
    out.cause = term.cause;

    // (9) observation with measurement noise
    prev_contact_ = rep.contact;
    last_report_ = rep;
    window_.push(flatten_frame(rep));
    build_observations(rep, fk);

    out.obs = obs_;
    out.priv = priv_;
    out.reward = rb;
    out.done = done_;
    out.lid_angle = lid_.angle;
    out.d_angle = d_angle;
    out.grasp = rep.grasp;
    out.contact = rep.contact;
    return out;
  }

  const Eigen::VectorXd& observation() const { return obs_; }
  const Eigen::VectorXd& privileged() const { return priv_; }
  const HandState& hand() const { return hand_; }
  HandState& hand_mut() { return hand_; }
  const LidState& lid() const { return lid_; }
  const ContactReport& last_report() const { return last_report_; }
  const TactileWindow& window() const { return window_; }
  const FingerKinematics& kinematics() const { return kin_; }
  const ContactFrameSet& frames() const { return frames_; }
  const TactileEncoder& encoder() const { return enc_; }
  const RunConfig& config() const { return cfg_; }
  double friction() const { return lid_.friction_scale; }
  double coupling_gain() const { return kappa_; }
  int steps_done() const { return steps_; }
  bool done() const { return done_; }

 private:
  Eigen::VectorXd flatten_frame(const ContactReport& rep) const {
    Eigen::VectorXd f(rep.normalized.size());
    int c = 0;
    for (Eigen::Index i = 0; i < rep.normalized.rows(); ++i)
      for (Eigen::Index j = 0; j < rep.normalized.cols(); ++j)
        f[c++] = rep.normalized(i, j);
    return f;
  }

  void build_observations(const ContactReport& rep, const HandFk& fk) {
    (void)fk;
    const int n = act_dim();
    Eigen::VectorXd q_meas = hand_.q;
    Eigen::VectorXd qd_meas = hand_.qdot;
    if (cfg_.randomize) {
      // measurement noise touches the observed q and qdot only; the
      // simulator state and the target block stay exact
      q_meas += cfg_.joint_noise_std * rng_.normal_vector(n);
      qd_meas += cfg_.joint_noise_std * rng_.normal_vector(n);
    }
    const Eigen::VectorXd z = enc_.encode(window_);

    obs_.resize(obs_dim());
    obs_ << q_meas, qd_meas, hand_.q_target, z, lid_center_;
    obs_ = obs_.cwiseMax(-cfg_.clip_obs).cwiseMin(cfg_.clip_obs);

    // critic extras: wrapped lid angle (bounded, the cumulative angle is
    // irrelevant to value), rate, true friction, raw penetrations, G
    priv_.resize(priv_dim());
    priv_.head(obs_dim()) = obs_;
    int c = obs_dim();
    priv_[c++] = wrap_angle(lid_.angle);
    priv_[c++] = lid_.rate;
    priv_[c++] = lid_.friction_scale;
    for (Eigen::Index i = 0; i < rep.penetration.rows(); ++i)
      for (Eigen::Index j = 0; j < rep.penetration.cols(); ++j)
        priv_[c++] = rep.penetration(i, j);
    for (Eigen::Index i = 0; i < rep.grasp.size(); ++i)
      priv_[c++] = rep.grasp[i];
    priv_ = priv_.cwiseMax(-cfg_.clip_obs).cwiseMin(cfg_.clip_obs);
  }

  RunConfig cfg_;
  FingerKinematics kin_;
  ContactFrameSet frames_;
  double kappa_;
  Rng rng_;
  TactileEncoder enc_;
  TactileWindow window_;
  Eigen::VectorXd pregrasp_;
  Vec3 lid_center_ = Vec3::Zero();

  HandState hand_;
  LidState lid_;
  ContactReport last_report_;
  std::vector<bool> prev_contact_;
  Eigen::VectorXd obs_, priv_;
  int steps_ = 0;
  bool done_ = false;
};

// Vectorized wrapper: N independent environments stepped in index order,
// with terminated members auto-reset inside the same call. Column i of
// every matrix belongs to environment i.
class VecEnv {
 public:
  VecEnv(const RunConfig& cfg, const TactileEncoder* encoder, int n,
         std::uint64_t base_seed) {
    if (n < 1) throw ConfigError("need at least one environment");
    envs_.reserve(n);
    for (int i = 0; i < n; ++i)
      envs_.emplace_back(cfg, encoder, mix_seed(base_seed, i));
  }

  int size() const { return static_cast<int>(envs_.size()); }
  int obs_dim() const { return envs_.front().obs_dim(); }
  int priv_dim() const { return envs_.front().priv_dim(); }
  int act_dim() const { return envs_.front().act_dim(); }
  LidEnv& env(int i) { return envs_[i]; }
  const LidEnv& env(int i) const { return envs_[i]; }

  Eigen::MatrixXd reset_all() {
    Eigen::MatrixXd obs(obs_dim(), size());
    for (int i = 0; i < size(); ++i) obs.col(i) = envs_[i].reset();
    return obs;
  }

  struct BatchResult {
    Eigen::MatrixXd obs;        // post-reset for members that finished
    Eigen::MatrixXd priv;
    Eigen::VectorXd reward;     // composed final reward per member
    std::vector<std::uint8_t> done;
    std::vector<std::uint8_t> truncated;
    Eigen::MatrixXd final_priv;  // terminal privileged state where done
    std::vector<RewardBreakdown> breakdown;
    std::vector<double> lid_angle;
    std::vector<double> d_angle;
  };

  BatchResult step(const Eigen::MatrixXd& actions) {
    if (actions.cols() != size() || actions.rows() != act_dim())
      throw InputError("batch action shape mismatch");
    BatchResult r;
    const int n = size();
    r.obs.resize(obs_dim(), n);
    r.priv.resize(priv_dim(), n);
    r.reward.resize(n);
    r.done.assign(n, 0);
    r.truncated.assign(n, 0);
    r.final_priv = Eigen::MatrixXd::Zero(priv_dim(), n);
    r.breakdown.resize(n);
    r.lid_angle.resize(n);
    r.d_angle.resize(n);
    for (int i = 0; i < n; ++i) {
      StepOut s = envs_[i].step(actions.col(i));
      r.reward[i] = s.reward.final;
      r.breakdown[i] = s.reward;
      r.lid_angle[i] = s.lid_angle;
      r.d_angle[i] = s.d_angle;
      r.priv.col(i) = s.priv;
      if (s.done) {
        r.done[i] = 1;
        r.truncated[i] = s.truncated ? 1 : 0;
        r.final_priv.col(i) = s.priv;
        r.obs.col(i) = envs_[i].reset();
        r.priv.col(i) = envs_[i].privileged();
      } else {
        r.obs.col(i) = s.obs;
      }
    }
    return r;
  }

 private:
  std::vector<LidEnv> envs_;
};

}  // namespace tacspin
