// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "tacspin/common.hpp"
#include "tacspin/geometry.hpp"
#include "tacspin/hand.hpp"
#include "tacspin/lid.hpp"
#include "tacspin/rewards.hpp"

namespace tacspin {

// Everything a run needs, defaults baked in. Sections mirror the YAML file:
// run, hand, lid, contact, rewards, randomization, ppo, encoder. Unknown
// keys are rejected on load so typos fail loudly instead of training with a
// silently ignored override.
struct RunConfig {
  // run
  std::uint64_t seed = 1;
  std::string out_dir = "runs/latest";
  std::string reward_set = "tac2motion";
  std::string shape = "cylinder";
  int num_envs = 64;
  std::int64_t total_steps = 2'000'000;
  std::string encoder_path;
  int checkpoint_every = 50;  // PPO iterations between checkpoints
  int eval_episodes = 100;
  double dt = 0.0166;
  int max_steps = 1000;
  double clip_obs = 10.0;

  HandParams hand;
  // sensor cap layout, applied onto the hand profile
  double cap_radius = 0.008;
  int sensors_per_finger = 9;
  double grid_fraction = 0.55;

  LidParams lid;
  double coupling_gain = 0.0;  // 0 = derive from the calibration block
  CouplingCalibration calibration;

  // contact
  double epsilon = 0.005;
  int frames = 8;
  double rho = 0.06;
  std::string release_mode = "strict";
  double contact_offset = 0.002;  // engine-fidelity key, unused here

  RewardWeights weights;
  std::string work_form = "per_joint";
  Vec3 desired_axis = Vec3(0.0, 0.0, 1.0);

  // randomization
  bool randomize = true;
  double action_noise_std = 0.2;
  double joint_noise_std = 0.4;
  double friction_low = 0.9;
  double friction_high = 1.5;

  // ppo
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_ratio = 0.2;
  double learning_rate = 3e-4;
  double entropy_coef = 1e-3;
  double value_coef = 0.5;
  double max_grad_norm = 0.5;
  double kl_stop = 0.05;
  int ppo_epochs = 5;
  int minibatches = 4;
  int horizon = 160;  // steps per env per iteration; batch = num_envs * horizon
  int hidden = 256;   // width of both hidden layers, actor and critic
  double log_std_init = -0.7;

  // encoder
  int enc_window = 10;
  int enc_dim = 16;
  int enc_hidden = 64;
  std::string enc_mode = "mlp";  // or "passthrough"
  int pretrain_episodes = 48;
  int pretrain_epochs = 40;
  double pretrain_lr = 1e-3;
  int enc_burn_in = 30;  // skip this many steps of each rollout

  RewardSet reward_set_enum() const { return parse_reward_set(reward_set); }
  LidShape shape_enum() const { return parse_shape(shape); }
  ReleaseMode release_mode_enum() const {
    if (release_mode == "strict") return ReleaseMode::kStrict;
    if (release_mode == "literal") return ReleaseMode::kLiteral;
    throw ConfigError("unknown release_mode: " + release_mode);
  }
  WorkForm work_form_enum() const {
    if (work_form == "per_joint") return WorkForm::kPerJoint;
    if (work_form == "inner_product") return WorkForm::kInnerProduct;
    throw ConfigError("unknown work_form: " + work_form);
  }

  double resolved_kappa() const {
    if (coupling_gain > 0.0) return coupling_gain;
    CouplingCalibration c = calibration;
    c.friction_max = friction_high;
    return calibrate_coupling_gain(lid, c, lid.rim_radius);
  }

  void validate() const {
    if (num_envs < 1) throw ConfigError("run.num_envs must be >= 1");
    if (total_steps < 1) throw ConfigError("run.total_steps must be >= 1");
    if (!(dt > 0.0)) throw ConfigError("run.dt must be positive");
    if (max_steps < 1) throw ConfigError("run.max_steps must be >= 1");
    if (epsilon <= 0.0) throw ConfigError("contact.epsilon must be positive");
    if (rho <= epsilon)
      throw ConfigError("contact.rho must exceed contact.epsilon");
    if (frames < 1) throw ConfigError("contact.frames must be >= 1");
    if (friction_high < friction_low)
      throw ConfigError("randomization friction range is inverted");
    if (horizon < 1) throw ConfigError("ppo.horizon must be >= 1");
    if (minibatches < 1) throw ConfigError("ppo.minibatches must be >= 1");
    if ((std::int64_t(num_envs) * horizon) % minibatches != 0)
      throw ConfigError("ppo.minibatches must divide num_envs * horizon");
    if (enc_window < 1) throw ConfigError("encoder.window must be >= 1");
    if (enc_dim < 1) throw ConfigError("encoder.dim must be >= 1");
    if (enc_mode != "mlp" && enc_mode != "passthrough")
      throw ConfigError("unknown encoder.mode: " + enc_mode);
    // enum fields validate on parse
    (void)reward_set_enum();
    (void)shape_enum();
    (void)release_mode_enum();
    (void)work_form_enum();
    (void)make_kinematics();
  }

  FingerKinematics make_kinematics() const {
    FingerKinematics k = make_hand_profile(hand);
    k.cap_radius = cap_radius;
    k.sensors_per_finger = sensors_per_finger;
    k.grid_fraction = grid_fraction;
    (void)cap_grid(k.cap_radius, k.sensors_per_finger, k.grid_fraction);
    return k;
  }
};

namespace detail {

inline void expect_keys(const YAML::Node& node, const std::string& section,
                        const std::set<std::string>& known) {
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!known.count(key))
      throw ConfigError("unknown config key: " + section + "." + key);
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (node[key]) {
    try {
      out = node[key].as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(std::string("bad value for config key: ") + key);
    }
  }
}

}  // namespace detail

inline RunConfig load_config(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot open config file: " + path);
  } catch (const YAML::Exception& e) {
    throw ConfigError("cannot parse config file: " + std::string(e.what()));
  }
  RunConfig c;
  detail::expect_keys(root, "top level",
                      {"run", "hand", "lid", "contact", "rewards",
                       "randomization", "ppo", "encoder"});

  if (auto n = root["run"]) {
    detail::expect_keys(
        n, "run",
        {"seed", "out_dir", "reward_set", "shape", "num_envs", "total_steps",
         "encoder_path", "checkpoint_every", "eval_episodes", "dt",
         "max_steps", "clip_obs"});
    detail::read(n, "seed", c.seed);
    detail::read(n, "out_dir", c.out_dir);
    detail::read(n, "reward_set", c.reward_set);
    detail::read(n, "shape", c.shape);
    detail::read(n, "num_envs", c.num_envs);
    detail::read(n, "total_steps", c.total_steps);
    detail::read(n, "encoder_path", c.encoder_path);
    detail::read(n, "checkpoint_every", c.checkpoint_every);
    detail::read(n, "eval_episodes", c.eval_episodes);
    detail::read(n, "dt", c.dt);
    detail::read(n, "max_steps", c.max_steps);
    detail::read(n, "clip_obs", c.clip_obs);
  }
  if (auto n = root["hand"]) {
    detail::expect_keys(n, "hand",
                        {"beta_ema", "eta", "action_scale", "rate_limit",
                         "track_gain", "pd_gain", "pd_damping", "hub_height",
                         "press_range", "profile", "cap_radius",
                         "sensors_per_finger", "grid_fraction"});
    detail::read(n, "beta_ema", c.hand.beta_ema);
    detail::read(n, "eta", c.hand.eta);
    detail::read(n, "action_scale", c.hand.action_scale);
    detail::read(n, "rate_limit", c.hand.rate_limit);
    detail::read(n, "track_gain", c.hand.track_gain);
    detail::read(n, "pd_gain", c.hand.pd_gain);
    detail::read(n, "pd_damping", c.hand.pd_damping);
    detail::read(n, "hub_height", c.hand.hub_height);
    detail::read(n, "press_range", c.hand.press_range);
    detail::read(n, "profile", c.hand.profile);
    detail::read(n, "cap_radius", c.cap_radius);
    detail::read(n, "sensors_per_finger", c.sensors_per_finger);
    detail::read(n, "grid_fraction", c.grid_fraction);
  }
  if (auto n = root["lid"]) {
    detail::expect_keys(n, "lid",
                        {"inertia", "base_torque", "damping_coeff",
                         "stiffness_coeff", "rim_radius", "coupling_gain",
                         "calibration"});
    detail::read(n, "inertia", c.lid.inertia);
    detail::read(n, "base_torque", c.lid.base_torque);
    detail::read(n, "damping_coeff", c.lid.damping_coeff);
    detail::read(n, "stiffness_coeff", c.lid.stiffness_coeff);
    detail::read(n, "rim_radius", c.lid.rim_radius);
    detail::read(n, "coupling_gain", c.coupling_gain);
    if (auto cal = n["calibration"]) {
      detail::expect_keys(cal, "lid.calibration",
                          {"n_stance", "g_ref", "omega_ref", "safety"});
      detail::read(cal, "n_stance", c.calibration.n_stance);
      detail::read(cal, "g_ref", c.calibration.g_ref);
      detail::read(cal, "omega_ref", c.calibration.omega_ref);
      detail::read(cal, "safety", c.calibration.safety);
    }
  }
  if (auto n = root["contact"]) {
    detail::expect_keys(n, "contact",
                        {"epsilon", "frames", "rho", "release_mode", "offset"});
    detail::read(n, "epsilon", c.epsilon);
    detail::read(n, "frames", c.frames);
    detail::read(n, "rho", c.rho);
    detail::read(n, "release_mode", c.release_mode);
    detail::read(n, "offset", c.contact_offset);
  }
  if (auto n = root["rewards"]) {
    detail::expect_keys(
        n, "rewards",
        {"lambda_cpr", "lambda_crr", "lambda_rr", "lambda_angle",
         "lambda_action", "lambda_work", "lambda_gaiting",
         "baseline_distance_weight", "work_form"});
    detail::read(n, "lambda_cpr", c.weights.cpr);
    detail::read(n, "lambda_crr", c.weights.crr);
    detail::read(n, "lambda_rr", c.weights.rr);
    detail::read(n, "lambda_angle", c.weights.angle);
    detail::read(n, "lambda_action", c.weights.action);
    detail::read(n, "lambda_work", c.weights.work);
    detail::read(n, "lambda_gaiting", c.weights.gaiting);
    detail::read(n, "baseline_distance_weight", c.weights.baseline_distance);
    detail::read(n, "work_form", c.work_form);
  }
  if (auto n = root["randomization"]) {
    detail::expect_keys(n, "randomization",
                        {"enabled", "action_noise_std", "joint_noise_std",
                         "friction_low", "friction_high"});
    detail::read(n, "enabled", c.randomize);
    detail::read(n, "action_noise_std", c.action_noise_std);
    detail::read(n, "joint_noise_std", c.joint_noise_std);
    detail::read(n, "friction_low", c.friction_low);
    detail::read(n, "friction_high", c.friction_high);
  }
  if (auto n = root["ppo"]) {
    detail::expect_keys(
        n, "ppo",
        {"gamma", "gae_lambda", "clip_ratio", "learning_rate", "entropy_coef",
         "value_coef", "max_grad_norm", "kl_stop", "epochs", "minibatches",
         "horizon", "hidden", "log_std_init"});
    detail::read(n, "gamma", c.gamma);
    detail::read(n, "gae_lambda", c.gae_lambda);
    detail::read(n, "clip_ratio", c.clip_ratio);
    detail::read(n, "learning_rate", c.learning_rate);
    detail::read(n, "entropy_coef", c.entropy_coef);
    detail::read(n, "value_coef", c.value_coef);
    detail::read(n, "max_grad_norm", c.max_grad_norm);
    detail::read(n, "kl_stop", c.kl_stop);
    detail::read(n, "epochs", c.ppo_epochs);
    detail::read(n, "minibatches", c.minibatches);
    detail::read(n, "horizon", c.horizon);
    detail::read(n, "hidden", c.hidden);
    detail::read(n, "log_std_init", c.log_std_init);
  }
  if (auto n = root["encoder"]) {
    detail::expect_keys(n, "encoder",
                        {"window", "dim", "hidden", "mode",
                         "pretrain_episodes", "pretrain_epochs", "pretrain_lr",
                         "burn_in"});
    detail::read(n, "window", c.enc_window);
    detail::read(n, "dim", c.enc_dim);
    detail::read(n, "hidden", c.enc_hidden);
    detail::read(n, "mode", c.enc_mode);
    detail::read(n, "pretrain_episodes", c.pretrain_episodes);
    detail::read(n, "pretrain_epochs", c.pretrain_epochs);
    detail::read(n, "pretrain_lr", c.pretrain_lr);
    detail::read(n, "burn_in", c.enc_burn_in);
  }
  c.validate();
  return c;
}

namespace detail {

// empty scalars would read back as null, so quote them
inline std::string yaml_str(const std::string& s) {
  return s.empty() ? std::string("\"\"") : s;
}

}  // namespace detail

// Effective-config emission with a fixed key order, so identical configs
// serialize byte-for-byte identical.
inline std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "run:\n";
  os << "  seed: " << c.seed << "\n";
  os << "  out_dir: " << detail::yaml_str(c.out_dir) << "\n";
  os << "  reward_set: " << c.reward_set << "\n";
  os << "  shape: " << c.shape << "\n";
  os << "  num_envs: " << c.num_envs << "\n";
  os << "  total_steps: " << c.total_steps << "\n";
  os << "  encoder_path: " << detail::yaml_str(c.encoder_path) << "\n";
  os << "  checkpoint_every: " << c.checkpoint_every << "\n";
  os << "  eval_episodes: " << c.eval_episodes << "\n";
  os << "  dt: " << c.dt << "\n";
  os << "  max_steps: " << c.max_steps << "\n";
  os << "  clip_obs: " << c.clip_obs << "\n";
  os << "hand:\n";
  os << "  beta_ema: " << c.hand.beta_ema << "\n";
  os << "  eta: " << c.hand.eta << "\n";
  os << "  action_scale: " << c.hand.action_scale << "\n";
  os << "  rate_limit: " << c.hand.rate_limit << "\n";
  os << "  track_gain: " << c.hand.track_gain << "\n";
  os << "  pd_gain: " << c.hand.pd_gain << "\n";
  os << "  pd_damping: " << c.hand.pd_damping << "\n";
  os << "  hub_height: " << c.hand.hub_height << "\n";
  os << "  press_range: " << c.hand.press_range << "\n";
  os << "  profile: " << c.hand.profile << "\n";
  os << "  cap_radius: " << c.cap_radius << "\n";
  os << "  sensors_per_finger: " << c.sensors_per_finger << "\n";
  os << "  grid_fraction: " << c.grid_fraction << "\n";
  os << "lid:\n";
  os << "  inertia: " << c.lid.inertia << "\n";
  os << "  base_torque: " << c.lid.base_torque << "\n";
  os << "  damping_coeff: " << c.lid.damping_coeff << "\n";
  os << "  stiffness_coeff: " << c.lid.stiffness_coeff << "\n";
  os << "  rim_radius: " << c.lid.rim_radius << "\n";
  os << "  coupling_gain: " << c.coupling_gain << "\n";
  os << "  calibration:\n";
  os << "    n_stance: " << c.calibration.n_stance << "\n";
  os << "    g_ref: " << c.calibration.g_ref << "\n";
  os << "    omega_ref: " << c.calibration.omega_ref << "\n";
  os << "    safety: " << c.calibration.safety << "\n";
  os << "contact:\n";
  os << "  epsilon: " << c.epsilon << "\n";
  os << "  frames: " << c.frames << "\n";
  os << "  rho: " << c.rho << "\n";
  os << "  release_mode: " << c.release_mode << "\n";
  os << "  offset: " << c.contact_offset << "\n";
  os << "rewards:\n";
  os << "  lambda_cpr: " << c.weights.cpr << "\n";
  os << "  lambda_crr: " << c.weights.crr << "\n";
  os << "  lambda_rr: " << c.weights.rr << "\n";
  os << "  lambda_angle: " << c.weights.angle << "\n";
  os << "  lambda_action: " << c.weights.action << "\n";
  os << "  lambda_work: " << c.weights.work << "\n";
  os << "  lambda_gaiting: " << c.weights.gaiting << "\n";
  os << "  baseline_distance_weight: " << c.weights.baseline_distance << "\n";
  os << "  work_form: " << c.work_form << "\n";
  os << "randomization:\n";
  os << "  enabled: " << (c.randomize ? "true" : "false") << "\n";
  os << "  action_noise_std: " << c.action_noise_std << "\n";
  os << "  joint_noise_std: " << c.joint_noise_std << "\n";
  os << "  friction_low: " << c.friction_low << "\n";
  os << "  friction_high: " << c.friction_high << "\n";
  os << "ppo:\n";
  os << "  gamma: " << c.gamma << "\n";
  os << "  gae_lambda: " << c.gae_lambda << "\n";
  os << "  clip_ratio: " << c.clip_ratio << "\n";
  os << "  learning_rate: " << c.learning_rate << "\n";
  os << "  entropy_coef: " << c.entropy_coef << "\n";
  os << "  value_coef: " << c.value_coef << "\n";
  os << "  max_grad_norm: " << c.max_grad_norm << "\n";
  os << "  kl_stop: " << c.kl_stop << "\n";
  os << "  epochs: " << c.ppo_epochs << "\n";
  os << "  minibatches: " << c.minibatches << "\n";
  os << "  horizon: " << c.horizon << "\n";
  os << "  hidden: " << c.hidden << "\n";
  os << "  log_std_init: " << c.log_std_init << "\n";
  os << "encoder:\n";
  os << "  window: " << c.enc_window << "\n";
  os << "  dim: " << c.enc_dim << "\n";
  os << "  hidden: " << c.enc_hidden << "\n";
  os << "  mode: " << c.enc_mode << "\n";
  os << "  pretrain_episodes: " << c.pretrain_episodes << "\n";
  os << "  pretrain_epochs: " << c.pretrain_epochs << "\n";
  os << "  pretrain_lr: " << c.pretrain_lr << "\n";
  os << "  burn_in: " << c.enc_burn_in << "\n";
  return os.str();
}

// Identifies configs that train identically. Output location and
// checkpoint/eval cadence change which files appear, never the parameter
// trajectory, so they are pinned before hashing; everything else counts.
inline std::uint64_t config_hash(const RunConfig& c) {
  RunConfig b = c;
  b.out_dir.clear();
  b.checkpoint_every = 0;
  b.eval_episodes = 0;
  return fnv1a(dump_config(b));
}

inline void save_config(const RunConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config to " + path);
  out << dump_config(c);
}

}  // namespace tacspin
