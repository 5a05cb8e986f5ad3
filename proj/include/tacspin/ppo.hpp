// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tacspin/common.hpp"
#include "tacspin/config.hpp"
#include "tacspin/env.hpp"
#include "tacspin/mlp.hpp"
#include "tacspin/rng.hpp"

namespace tacspin {

// Diagonal Gaussian policy. The actor maps observations to a tanh-squashed
// mean in [-1, 1]; exploration noise comes from a state-independent
// learnable log-std vector. The critic reads the privileged state, never
// the actor, which is what makes the pair asymmetric.
class GaussianPolicy {
 public:
  GaussianPolicy(int obs_dim, int priv_dim, int act_dim, int hidden,
                 double log_std_init, Rng& rng)
      : actor_({obs_dim, hidden, hidden, act_dim}, Act::kTanh, Act::kTanh,
               rng),
        critic_({priv_dim, hidden, hidden, 1}, Act::kTanh, Act::kIdentity,
                rng),
        log_std_(Eigen::VectorXd::Constant(act_dim, log_std_init)) {
    // start with near-zero means so early rollouts are noise-dominated
    actor_.scale_last(0.01);
  }

  // rebuild from serialized parts, used by the checkpoint loader
  GaussianPolicy(Mlp actor, Mlp critic, Eigen::VectorXd log_std)
      : actor_(std::move(actor)),
        critic_(std::move(critic)),
        log_std_(std::move(log_std)) {
    if (actor_.out_dim() != log_std_.size())
      throw InputError("log_std length disagrees with the actor");
    if (critic_.out_dim() != 1)
      throw InputError("critic must produce a scalar value");
  }

  int obs_dim() const { return actor_.in_dim(); }
  int priv_dim() const { return critic_.in_dim(); }
  int act_dim() const { return actor_.out_dim(); }

  Eigen::MatrixXd mean(const Eigen::MatrixXd& obs,
                       Mlp::Tape* tape = nullptr) const {
    return actor_.forward(obs, tape);
  }

  Eigen::VectorXd values(const Eigen::MatrixXd& priv,
                         Mlp::Tape* tape = nullptr) const {
    return critic_.forward(priv, tape).row(0).transpose();
  }

  double value1(const Eigen::VectorXd& priv) const {
    return critic_.forward1(priv)(0);
  }

  // draw one action per observation column; log-probs come back by value
  Eigen::MatrixXd sample(const Eigen::MatrixXd& obs, Rng& rng,
                         Eigen::VectorXd& logp) const {
    const Eigen::MatrixXd mu = mean(obs);
    const Eigen::VectorXd sigma = log_std_.array().exp();
    Eigen::MatrixXd actions(mu.rows(), mu.cols());
    for (Eigen::Index c = 0; c < mu.cols(); ++c)
      for (Eigen::Index r = 0; r < mu.rows(); ++r)
        actions(r, c) = mu(r, c) + sigma(r) * rng.normal();
    logp = log_prob(mu, actions);
    return actions;
  }

  // per-column diagonal Gaussian log density of the given actions
  Eigen::VectorXd log_prob(const Eigen::MatrixXd& mu,
                           const Eigen::MatrixXd& actions) const {
    if (mu.rows() != actions.rows() || mu.cols() != actions.cols())
      throw InputError("log_prob shape mismatch");
    const Eigen::ArrayXd inv_var = (-2.0 * log_std_.array()).exp();
    const double base =
        log_std_.sum() + 0.5 * act_dim() * std::log(2.0 * M_PI);
    Eigen::VectorXd out(mu.cols());
    for (Eigen::Index c = 0; c < mu.cols(); ++c) {
      const Eigen::ArrayXd d = (actions.col(c) - mu.col(c)).array();
      out(c) = -0.5 * (d.square() * inv_var).sum() - base;
    }
    return out;
  }

  // state-independent entropy of the diagonal Gaussian
  double entropy() const {
    return log_std_.sum() +
           0.5 * act_dim() * (1.0 + std::log(2.0 * M_PI));
  }

  Mlp& actor() { return actor_; }
  const Mlp& actor() const { return actor_; }
  Mlp& critic() { return critic_; }
  const Mlp& critic() const { return critic_; }
  const Eigen::VectorXd& log_std() const { return log_std_; }
  void set_log_std(const Eigen::VectorXd& v) {
    if (v.size() != log_std_.size()) throw InputError("log_std size");
    log_std_ = v;
  }

  // one flat vector for the optimizer: mlp weights first, log-std last
  int actor_param_count() const {
    return actor_.param_count() + act_dim();
  }
  Eigen::VectorXd actor_params() const {
    Eigen::VectorXd p(actor_param_count());
    p.head(actor_.param_count()) = actor_.flat_params();
    p.tail(act_dim()) = log_std_;
    return p;
  }
  void set_actor_params(const Eigen::VectorXd& p) {
    if (p.size() != actor_param_count())
      throw InputError("actor param vector size");
    actor_.set_flat_params(p.head(actor_.param_count()));
    log_std_ = p.tail(act_dim());
  }

  std::uint64_t checksum() const {
    const Eigen::VectorXd a = actor_params();
    const Eigen::VectorXd c = critic_.flat_params();
    std::uint64_t h = fnv1a(a.data(), sizeof(double) * a.size());
    return fnv1a(c.data(), sizeof(double) * c.size(), h);
  }

 private:
  Mlp actor_;
  Mlp critic_;
  Eigen::VectorXd log_std_;
};

// On-policy storage for T steps of N environments. Column t*n + i holds
// step t of environment i. done marks any episode end; truncated marks
// the subset that ended by timeout, whose value bootstrap lives in boot.
struct RolloutBuffer {
  int n = 0;
  int t = 0;
  Eigen::MatrixXd obs;
  Eigen::MatrixXd priv;
  Eigen::MatrixXd actions;
  Eigen::VectorXd logp;
  Eigen::VectorXd rewards;
  Eigen::VectorXd values;
  std::vector<std::uint8_t> done;
  std::vector<std::uint8_t> truncated;
  Eigen::VectorXd boot;         // V(terminal state) where truncated, else 0
  Eigen::VectorXd last_values;  // V of the state after the final step, per env
  Eigen::VectorXd advantages;   // normalized, filled by compute_gae
  Eigen::VectorXd returns;      // raw advantages + values

  int size() const { return n * t; }
  int idx(int step, int env) const { return step * n + env; }

  void allocate(int envs, int steps, int obs_dim, int priv_dim, int act_dim) {
    n = envs;
    t = steps;
    obs.resize(obs_dim, size());
    priv.resize(priv_dim, size());
    actions.resize(act_dim, size());
    logp.resize(size());
    rewards.resize(size());
    values.resize(size());
    done.assign(size(), 0);
    truncated.assign(size(), 0);
    boot = Eigen::VectorXd::Zero(size());
    last_values = Eigen::VectorXd::Zero(envs);
  }
};

// Generalized advantage estimation. Returns are raw advantages plus values;
// the stored advantages are then normalized over the whole batch. A done
// step cuts the trace; a truncated step still bootstraps from boot.
inline void compute_gae(RolloutBuffer& buf, double gamma, double lambda) {
  if (buf.size() == 0) throw InputError("empty rollout buffer");
  buf.advantages.resize(buf.size());
  for (int i = 0; i < buf.n; ++i) {
    double acc = 0.0;
    for (int s = buf.t - 1; s >= 0; --s) {
      const int j = buf.idx(s, i);
      const bool end = buf.done[j] != 0;
      const double next_v =
          end ? buf.boot(j)
              : (s + 1 < buf.t ? buf.values(buf.idx(s + 1, i))
                               : buf.last_values(i));
      const double delta =
          buf.rewards(j) + gamma * next_v - buf.values(j);
      acc = delta + gamma * lambda * (end ? 0.0 : 1.0) * acc;
      buf.advantages(j) = acc;
    }
  }
  buf.returns = buf.advantages + buf.values;
  const double mean = buf.advantages.mean();
  const double var =
      (buf.advantages.array() - mean).square().sum() / buf.size();
  buf.advantages = (buf.advantages.array() - mean) / (std::sqrt(var) + 1e-8);
}

// Loss terms for one minibatch; total is what the gradients descend.
struct PpoLossTerms {
  double policy = 0.0;
  double value = 0.0;
  double entropy = 0.0;
  double kl = 0.0;           // mean of ratio - 1 - log(ratio), always >= 0
  double clip_fraction = 0.0;
  double total = 0.0;
};

// Clipped-surrogate + value loss + entropy bonus over the given columns.
// Pass gradient outputs to get analytic gradients (pre-clip); pass null to
// evaluate the loss alone, which is what the finite-difference checks do.
inline PpoLossTerms ppo_loss_grad(const GaussianPolicy& pol,
                                  const RolloutBuffer& buf,
                                  const std::vector<int>& cols, double clip,
                                  double entropy_coef, double value_coef,
                                  Eigen::VectorXd* grad_actor,
                                  Eigen::VectorXd* grad_critic) {
  const int b = static_cast<int>(cols.size());
  if (b == 0) throw InputError("empty minibatch");
  const int od = pol.obs_dim(), pd = pol.priv_dim(), ad = pol.act_dim();

  Eigen::MatrixXd obs(od, b), priv(pd, b), act(ad, b);
  Eigen::VectorXd adv(b), ret(b), logp_old(b);
  for (int k = 0; k < b; ++k) {
    const int j = cols[k];
    obs.col(k) = buf.obs.col(j);
    priv.col(k) = buf.priv.col(j);
    act.col(k) = buf.actions.col(j);
    adv(k) = buf.advantages(j);
    ret(k) = buf.returns(j);
    logp_old(k) = buf.logp(j);
  }

  Mlp::Tape tape_a, tape_c;
  const Eigen::MatrixXd mu = pol.mean(obs, grad_actor ? &tape_a : nullptr);
  const Eigen::VectorXd logp = pol.log_prob(mu, act);
  const Eigen::VectorXd v =
      pol.values(priv, grad_critic ? &tape_c : nullptr);
  if (!mu.allFinite() || !v.allFinite())
    throw InputError("non-finite network output in ppo update");

  PpoLossTerms out;
  const Eigen::ArrayXd ratio = (logp - logp_old).array().exp();
  const Eigen::ArrayXd s1 = ratio * adv.array();
  const Eigen::ArrayXd s2 =
      ratio.min(1.0 + clip).max(1.0 - clip) * adv.array();
  out.policy = -s1.min(s2).mean();
  out.value = value_coef * 0.5 * (v - ret).array().square().mean();
  out.entropy = pol.entropy();
  out.kl = (ratio - 1.0 - ratio.log()).mean();
  out.clip_fraction =
      ((ratio - 1.0).abs() > clip).cast<double>().mean();
  out.total = out.policy + out.value - entropy_coef * out.entropy;

  if (grad_actor) {
    // d(-surrogate)/dlogp: the unclipped branch carries ratio * adv, a
    // saturated clipped branch contributes nothing
    Eigen::ArrayXd dlogp(b);
    for (int k = 0; k < b; ++k)
      dlogp(k) = (s1(k) <= s2(k)) ? -ratio(k) * adv(k) / b : 0.0;

    const Eigen::ArrayXd inv_var = (-2.0 * pol.log_std().array()).exp();
    Eigen::MatrixXd dmu(ad, b);
    Eigen::ArrayXd dlogstd = Eigen::ArrayXd::Zero(ad);
    for (int k = 0; k < b; ++k) {
      const Eigen::ArrayXd d = (act.col(k) - mu.col(k)).array();
      // dlogp/dmu = (a - mu)/sigma^2, dlogp/dlogstd = d^2/sigma^2 - 1
      dmu.col(k) = (dlogp(k) * d * inv_var).matrix();
      dlogstd += dlogp(k) * (d.square() * inv_var - 1.0);
    }
    dlogstd -= entropy_coef;  // bonus pushes log-std up uniformly

    Eigen::VectorXd gm;
    pol.actor().backward(tape_a, dmu, gm);
    grad_actor->resize(pol.actor_param_count());
    grad_actor->head(gm.size()) = gm;
    grad_actor->tail(ad) = dlogstd.matrix();
  }
  if (grad_critic) {
    const Eigen::MatrixXd dv =
        (value_coef / b) * (v - ret).transpose();
    pol.critic().backward(tape_c, dv, *grad_critic);
  }
  return out;
}

// Aggregate statistics from one ppo_update call, averaged over the
// minibatches actually processed.
struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double kl = 0.0;
  double clip_fraction = 0.0;
  double grad_norm_actor = 0.0;
  double grad_norm_critic = 0.0;
  int epochs_ran = 0;
  int minibatches_ran = 0;
};

// Several epochs of shuffled minibatch ascent on the clipped objective.
// The epoch loop stops early once the KL estimate passes cfg.kl_stop.
inline UpdateStats ppo_update(GaussianPolicy& pol, const RolloutBuffer& buf,
                              const RunConfig& cfg, Adam& adam_actor,
                              Adam& adam_critic, Rng& rng) {
  const int batch = buf.size();
  if (cfg.minibatches < 1 || batch < cfg.minibatches)
    throw ConfigError("batch smaller than minibatch count");
  std::vector<int> order(batch);
  std::iota(order.begin(), order.end(), 0);

  UpdateStats st;
  bool stop = false;
  for (int epoch = 0; epoch < cfg.ppo_epochs && !stop; ++epoch) {
    rng.shuffle(order);
    for (int m = 0; m < cfg.minibatches; ++m) {
      const int lo = batch * m / cfg.minibatches;
      const int hi = batch * (m + 1) / cfg.minibatches;
      const std::vector<int> cols(order.begin() + lo, order.begin() + hi);

      Eigen::VectorXd ga, gc;
      const PpoLossTerms lt =
          ppo_loss_grad(pol, buf, cols, cfg.clip_ratio, cfg.entropy_coef,
                        cfg.value_coef, &ga, &gc);
      st.grad_norm_actor += clip_grad_norm(ga, cfg.max_grad_norm);
      st.grad_norm_critic += clip_grad_norm(gc, cfg.max_grad_norm);

      Eigen::VectorXd pa = pol.actor_params();
      adam_actor.step(pa, ga);
      pol.set_actor_params(pa);
      Eigen::VectorXd pc = pol.critic().flat_params();
      adam_critic.step(pc, gc);
      pol.critic().set_flat_params(pc);

      st.policy_loss += lt.policy;
      st.value_loss += lt.value;
      st.entropy += lt.entropy;
      st.kl += lt.kl;
      st.clip_fraction += lt.clip_fraction;
      ++st.minibatches_ran;
      if (lt.kl > cfg.kl_stop) {
        stop = true;  // logged through stats, not fatal
        break;
      }
    }
    if (!stop) ++st.epochs_ran;
  }
  const double k = std::max(1, st.minibatches_ran);
  st.policy_loss /= k;
  st.value_loss /= k;
  st.entropy /= k;
  st.kl /= k;
  st.clip_fraction /= k;
  st.grad_norm_actor /= k;
  st.grad_norm_critic /= k;
  return st;
}

// ---------- rollout collection ---------- //

struct CollectStats {
  double mean_reward = 0.0;    // per-step composed reward over the batch
  double mean_d_angle = 0.0;   // per-step lid rotation over the batch
  int episodes_done = 0;
  double mean_return = 0.0;    // over episodes completed in this window
  double mean_length = 0.0;
};

// Runs the policy for T steps across the vector env, recording everything
// the update needs. Per-env running returns live outside so episode stats
// survive window boundaries.
inline RolloutBuffer collect_rollout(const GaussianPolicy& pol, VecEnv& venv,
                                     int steps, Rng& rng,
                                     Eigen::MatrixXd& cur_obs,
                                     Eigen::MatrixXd& cur_priv,
                                     std::vector<double>& run_return,
                                     std::vector<int>& run_length,
                                     CollectStats* stats = nullptr) {
  const int n = venv.size();
  if (steps < 1) throw ConfigError("rollout needs at least one step");
  RolloutBuffer buf;
  buf.allocate(n, steps, venv.obs_dim(), venv.priv_dim(), venv.act_dim());

  double sum_r = 0.0, sum_da = 0.0, sum_ret = 0.0, sum_len = 0.0;
  int done_count = 0;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXd logp;
    const Eigen::MatrixXd actions = pol.sample(cur_obs, rng, logp);
    if (!actions.allFinite())
      throw InputError("non-finite action sample during collection");
    const Eigen::VectorXd vals = pol.values(cur_priv);

    VecEnv::BatchResult br = venv.step(actions);
    for (int i = 0; i < n; ++i) {
      const int j = buf.idx(s, i);
      buf.obs.col(j) = cur_obs.col(i);
      buf.priv.col(j) = cur_priv.col(i);
      buf.actions.col(j) = actions.col(i);
      buf.logp(j) = logp(i);
      buf.values(j) = vals(i);
      buf.rewards(j) = br.reward(i);
      buf.done[j] = br.done[i];
      buf.truncated[j] = br.truncated[i];
      if (br.truncated[i]) buf.boot(j) = pol.value1(br.final_priv.col(i));

      run_return[i] += br.reward(i);
      run_length[i] += 1;
      sum_r += br.reward(i);
      sum_da += br.d_angle[i];
      if (br.done[i]) {
        sum_ret += run_return[i];
        sum_len += run_length[i];
        ++done_count;
        run_return[i] = 0.0;
        run_length[i] = 0;
      }
    }
    cur_obs = br.obs;
    cur_priv = br.priv;
  }
  buf.last_values = pol.values(cur_priv);

  if (stats) {
    stats->mean_reward = sum_r / buf.size();
    stats->mean_d_angle = sum_da / buf.size();
    stats->episodes_done = done_count;
    stats->mean_return = done_count > 0 ? sum_ret / done_count : 0.0;
    stats->mean_length = done_count > 0 ? sum_len / done_count : 0.0;
  }
  return buf;
}

// ---------- checkpoints ---------- //

// Binary policy checkpoint, tied to the config that produced it.
//   magic "TSPK", version, config hash, env steps, dims, log-std,
//   actor blob, critic blob, fnv1a checksum of the parameters.
inline void save_checkpoint(const GaussianPolicy& pol, std::uint64_t cfg_hash,
                            std::int64_t env_steps, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write checkpoint: " + path);
  os.write("TSPK", 4);
  const std::int32_t version = 1;
  os.write(reinterpret_cast<const char*>(&version), sizeof(version));
  os.write(reinterpret_cast<const char*>(&cfg_hash), sizeof(cfg_hash));
  os.write(reinterpret_cast<const char*>(&env_steps), sizeof(env_steps));
  const std::int32_t dims[3] = {pol.obs_dim(), pol.priv_dim(),
                                pol.act_dim()};
  os.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  const Eigen::VectorXd ls = pol.log_std();
  os.write(reinterpret_cast<const char*>(ls.data()),
           static_cast<std::streamsize>(sizeof(double) * ls.size()));
  pol.actor().save(os);
  pol.critic().save(os);
  const std::uint64_t sum = pol.checksum();
  os.write(reinterpret_cast<const char*>(&sum), sizeof(sum));
  if (!os) throw InputError("short write on checkpoint: " + path);
}

struct Checkpoint {
  GaussianPolicy policy;
  std::uint64_t config_hash = 0;
  std::int64_t env_steps = 0;
};

inline Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open checkpoint: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != "TSPK")
    throw InputError("not a policy checkpoint: " + path);
  std::int32_t version = 0;
  is.read(reinterpret_cast<char*>(&version), sizeof(version));
  if (version != 1) throw InputError("unsupported checkpoint version");
  std::uint64_t cfg_hash = 0;
  std::int64_t env_steps = 0;
  is.read(reinterpret_cast<char*>(&cfg_hash), sizeof(cfg_hash));
  is.read(reinterpret_cast<char*>(&env_steps), sizeof(env_steps));
  std::int32_t dims[3];
  is.read(reinterpret_cast<char*>(dims), sizeof(dims));
  if (!is || dims[0] < 1 || dims[1] < 1 || dims[2] < 1)
    throw InputError("corrupt checkpoint header");
  Eigen::VectorXd ls(dims[2]);
  is.read(reinterpret_cast<char*>(ls.data()),
          static_cast<std::streamsize>(sizeof(double) * ls.size()));
  if (!is) throw InputError("truncated checkpoint header");
  Mlp actor = Mlp::load(is);
  Mlp critic = Mlp::load(is);
  Checkpoint ck{GaussianPolicy(std::move(actor), std::move(critic), ls),
                cfg_hash, env_steps};
  std::uint64_t sum = 0;
  is.read(reinterpret_cast<char*>(&sum), sizeof(sum));
  if (!is || sum != ck.policy.checksum())
    throw InputError("checkpoint checksum mismatch: " + path);
  if (ck.policy.obs_dim() != dims[0] || ck.policy.priv_dim() != dims[1] ||
      ck.policy.act_dim() != dims[2])
    throw InputError("checkpoint dims disagree with blobs");
  return ck;
}

// ---------- training loop ---------- //

// Owns everything one training run needs: the vector env, the policy, the
// optimizers and the RNG stream. One iterate() is collect + GAE + update;
// the caller decides how many to run and where the CSV rows go.
class PpoTrainer {
 public:
  PpoTrainer(const RunConfig& cfg, const TactileEncoder* encoder)
      : cfg_(cfg),
        venv_(cfg, encoder, cfg.num_envs, cfg.seed),
        rng_(mix_seed(cfg.seed, 0x90110u)),
        policy_(venv_.obs_dim(), venv_.priv_dim(), venv_.act_dim(),
                cfg.hidden, cfg.log_std_init, rng_),
        adam_actor_(policy_.actor_param_count(), cfg.learning_rate),
        adam_critic_(policy_.critic().param_count(), cfg.learning_rate),
        run_return_(cfg.num_envs, 0.0),
        run_length_(cfg.num_envs, 0) {
    // members come freshly reset out of the VecEnv constructor
    cur_obs_.resize(venv_.obs_dim(), venv_.size());
    cur_priv_.resize(venv_.priv_dim(), venv_.size());
    for (int i = 0; i < venv_.size(); ++i) {
      cur_obs_.col(i) = venv_.env(i).observation();
      cur_priv_.col(i) = venv_.env(i).privileged();
    }
  }

  struct IterStats {
    int iter = 0;
    std::int64_t env_steps = 0;
    CollectStats collect;
    UpdateStats update;
  };

  IterStats iterate() {
    IterStats out;
    RolloutBuffer buf =
        collect_rollout(policy_, venv_, cfg_.horizon, rng_, cur_obs_,
                        cur_priv_, run_return_, run_length_, &out.collect);
    compute_gae(buf, cfg_.gamma, cfg_.gae_lambda);
    out.update = ppo_update(policy_, buf, cfg_, adam_actor_, adam_critic_,
                            rng_);
    ++iter_;
    env_steps_ += static_cast<std::int64_t>(cfg_.horizon) * venv_.size();
    out.iter = iter_;
    out.env_steps = env_steps_;
    return out;
  }

  static std::string csv_header() {
    return "iter,env_steps,mean_reward,mean_d_angle,episodes_done,"
           "mean_return,mean_length,policy_loss,value_loss,entropy,kl,"
           "clip_fraction,epochs_ran";
  }

  static std::string csv_row(const IterStats& s) {
    std::ostringstream os;
    os << s.iter << ',' << s.env_steps << ','
       << fmt_g(s.collect.mean_reward) << ','
       << fmt_g(s.collect.mean_d_angle) << ',' << s.collect.episodes_done
       << ',' << fmt_g(s.collect.mean_return) << ','
       << fmt_g(s.collect.mean_length) << ','
       << fmt_g(s.update.policy_loss) << ',' << fmt_g(s.update.value_loss)
       << ',' << fmt_g(s.update.entropy) << ',' << fmt_g(s.update.kl) << ','
       << fmt_g(s.update.clip_fraction) << ',' << s.update.epochs_ran;
    return os.str();
  }

  GaussianPolicy& policy() { return policy_; }
  const GaussianPolicy& policy() const { return policy_; }
  VecEnv& envs() { return venv_; }
  std::int64_t env_steps() const { return env_steps_; }
  int iterations() const { return iter_; }
  const RunConfig& config() const { return cfg_; }

 private:
  RunConfig cfg_;
  VecEnv venv_;
  Rng rng_;
  GaussianPolicy policy_;
  Adam adam_actor_;
  Adam adam_critic_;
  Eigen::MatrixXd cur_obs_, cur_priv_;
  std::vector<double> run_return_;
  std::vector<int> run_length_;
  int iter_ = 0;
  std::int64_t env_steps_ = 0;
};

}  // namespace tacspin
