// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#include "tacspin/ppo.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

namespace tacspin {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

RunConfig quiet_config() {
  RunConfig c;
  c.randomize = false;
  c.num_envs = 2;
  c.horizon = 8;
  c.hidden = 8;
  c.minibatches = 2;
  return c;
}

// hand-filled buffer, no environment involved
RolloutBuffer toy_buffer(const GaussianPolicy& pol, int n, int t, Rng& rng) {
  RolloutBuffer buf;
  buf.allocate(n, t, pol.obs_dim(), pol.priv_dim(), pol.act_dim());
  for (int j = 0; j < buf.size(); ++j) {
    buf.obs.col(j) = rng.normal_vector(pol.obs_dim(), 1.0);
    buf.priv.col(j) = rng.normal_vector(pol.priv_dim(), 1.0);
  }
  VectorXd logp;
  buf.actions = pol.sample(buf.obs, rng, logp);
  // offset the stored log-probs so ratios are spread on both clip sides
  for (int j = 0; j < buf.size(); ++j)
    buf.logp(j) = logp(j) + rng.uniform(-0.4, 0.4);
  buf.values = pol.values(buf.priv);
  buf.advantages.resize(buf.size());
  buf.returns.resize(buf.size());
  for (int j = 0; j < buf.size(); ++j) {
    buf.rewards(j) = rng.normal();
    buf.advantages(j) = rng.normal();
    buf.returns(j) = rng.normal();
  }
  return buf;
}

TEST(Policy, MeanIsSquashedAndDimsCheckOut) {
  Rng rng(3);
  GaussianPolicy pol(6, 9, 4, 16, -0.7, rng);
  EXPECT_EQ(pol.obs_dim(), 6);
  EXPECT_EQ(pol.priv_dim(), 9);
  EXPECT_EQ(pol.act_dim(), 4);
  const MatrixXd obs = 50.0 * MatrixXd::Random(6, 32);
  const MatrixXd mu = pol.mean(obs);
  EXPECT_LE(mu.maxCoeff(), 1.0);
  EXPECT_GE(mu.minCoeff(), -1.0);
  EXPECT_EQ(pol.values(MatrixXd::Random(9, 32)).size(), 32);
}

TEST(Policy, LogProbMatchesHandDensity) {
  Rng rng(11);
  GaussianPolicy pol(2, 2, 2, 4, std::log(0.5), rng);
  MatrixXd obs = MatrixXd::Zero(2, 1);
  const MatrixXd mu = pol.mean(obs);
  MatrixXd a = mu;
  a(0, 0) += 0.25;  // half a sigma off on the first axis
  const double lp = pol.log_prob(mu, a)(0);
  // -0.5*(0.5^2) - 2*log(0.5) - log(2*pi)
  const double want =
      -0.5 * 0.25 - 2.0 * std::log(0.5) - std::log(2.0 * M_PI);
  EXPECT_NEAR(lp, want, 1e-12);
}

TEST(Policy, EntropyClosedForm) {
  Rng rng(2);
  GaussianPolicy pol(3, 3, 5, 4, -0.7, rng);
  const double want = 5.0 * (-0.7 + 0.5 * (1.0 + std::log(2.0 * M_PI)));
  EXPECT_NEAR(pol.entropy(), want, 1e-12);
}

TEST(Policy, SampleLogProbsAgreeWithRecomputation) {
  Rng rng(7);
  GaussianPolicy pol(5, 5, 3, 8, -0.3, rng);
  Rng draws(21);
  const MatrixXd obs = MatrixXd::Random(5, 64);
  VectorXd logp;
  const MatrixXd a = pol.sample(obs, draws, logp);
  const VectorXd again = pol.log_prob(pol.mean(obs), a);
  EXPECT_LT((logp - again).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Policy, ActorParamsRoundTripIncludesLogStd) {
  Rng rng(13);
  GaussianPolicy pol(4, 4, 3, 8, -0.7, rng);
  VectorXd p = pol.actor_params();
  EXPECT_EQ(p.size(), pol.actor_param_count());
  p.array() += 0.125;
  pol.set_actor_params(p);
  EXPECT_TRUE(pol.actor_params() == p);
  EXPECT_DOUBLE_EQ(pol.log_std()(0), -0.7 + 0.125);
  EXPECT_THROW(pol.set_actor_params(VectorXd::Zero(3)), InputError);
}

// ---------- GAE ---------- //

TEST(Gae, ZeroGammaReturnsAreTheRewards) {
  RolloutBuffer buf;
  buf.allocate(2, 5, 1, 1, 1);
  Rng rng(4);
  for (int j = 0; j < buf.size(); ++j) {
    buf.rewards(j) = rng.normal();
    buf.values(j) = rng.normal();
  }
  buf.last_values = VectorXd::Constant(2, 3.0);
  compute_gae(buf, 0.0, 0.95);
  // gamma = 0 makes each raw advantage r_t - V_t, so returns collapse to r
  for (int j = 0; j < buf.size(); ++j)
    EXPECT_NEAR(buf.returns(j), buf.rewards(j), 1e-12);
}

TEST(Gae, GeometricSeriesClosedForm) {
  const int t = 2000;
  RolloutBuffer buf;
  buf.allocate(1, t, 1, 1, 1);
  buf.rewards.setOnes();
  buf.values.setZero();
  compute_gae(buf, 0.99, 0.95);
  const double want = 1.0 / (1.0 - 0.99 * 0.95);
  EXPECT_NEAR(buf.returns(0) - buf.values(0), want, 1e-9);
}

TEST(Gae, AllZeroStaysAllZero) {
  RolloutBuffer buf;
  buf.allocate(3, 4, 1, 1, 1);
  buf.rewards.setZero();
  buf.values.setZero();
  compute_gae(buf, 0.99, 0.95);
  EXPECT_DOUBLE_EQ(buf.advantages.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_DOUBLE_EQ(buf.returns.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Gae, TerminalCutsAndTruncationBootstraps) {
  // gamma = lambda = 0.5, rewards 1, values 0.5, next value after the
  // last step 0.25; every number below is dyadic so equality is exact
  auto make = [] {
    RolloutBuffer buf;
    buf.allocate(1, 4, 1, 1, 1);
    buf.rewards.setOnes();
    buf.values.setConstant(0.5);
    buf.last_values = VectorXd::Constant(1, 0.25);
    return buf;
  };
  {
    RolloutBuffer buf = make();
    buf.done[1] = 1;  // hard failure: no bootstrap
    compute_gae(buf, 0.5, 0.5);
    const VectorXd raw = buf.returns - buf.values;
    EXPECT_DOUBLE_EQ(raw(0), 0.875);
    EXPECT_DOUBLE_EQ(raw(1), 0.5);
    EXPECT_DOUBLE_EQ(raw(2), 0.90625);
    EXPECT_DOUBLE_EQ(raw(3), 0.625);
  }
  {
    RolloutBuffer buf = make();
    buf.done[1] = 1;
    buf.truncated[1] = 1;
    buf.boot(1) = 0.8;  // timeout: bootstrap from the terminal value
    compute_gae(buf, 0.5, 0.5);
    const VectorXd raw = buf.returns - buf.values;
    EXPECT_DOUBLE_EQ(raw(1), 0.9);
    EXPECT_DOUBLE_EQ(raw(0), 0.975);
  }
}

// ---------- loss and gradients ---------- //

TEST(Loss, ZeroAdvantagesFreezeTheActor) {
  Rng rng(31);
  GaussianPolicy pol(4, 5, 3, 8, -0.5, rng);
  Rng fill(32);
  RolloutBuffer buf = toy_buffer(pol, 4, 3, fill);
  buf.advantages.setZero();

  std::vector<int> cols(buf.size());
  std::iota(cols.begin(), cols.end(), 0);
  Eigen::VectorXd ga, gc;
  ppo_loss_grad(pol, buf, cols, 0.2, 0.0, 0.5, &ga, &gc);
  EXPECT_DOUBLE_EQ(ga.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT(gc.cwiseAbs().maxCoeff(), 0.0);

  // a full update with zero advantages and no entropy bonus must leave
  // every actor parameter bit-identical
  RunConfig cfg = quiet_config();
  cfg.entropy_coef = 0.0;
  cfg.minibatches = 2;
  const VectorXd before = pol.actor_params();
  const VectorXd critic_before = pol.critic().flat_params();
  Adam aa(pol.actor_param_count(), cfg.learning_rate);
  Adam ac(pol.critic().param_count(), cfg.learning_rate);
  Rng order(5);
  ppo_update(pol, buf, cfg, aa, ac, order);
  EXPECT_TRUE(pol.actor_params() == before);
  EXPECT_FALSE(pol.critic().flat_params() == critic_before);
}

TEST(Loss, EntropyBonusOnlyMovesLogStdWhenAdvantagesVanish) {
  Rng rng(33);
  GaussianPolicy pol(4, 5, 3, 8, -0.5, rng);
  Rng fill(34);
  RolloutBuffer buf = toy_buffer(pol, 4, 3, fill);
  buf.advantages.setZero();
  std::vector<int> cols(buf.size());
  std::iota(cols.begin(), cols.end(), 0);
  Eigen::VectorXd ga, gc;
  ppo_loss_grad(pol, buf, cols, 0.2, 1e-2, 0.5, &ga, &gc);
  EXPECT_DOUBLE_EQ(ga.head(pol.actor().param_count()).cwiseAbs().maxCoeff(),
                   0.0);
  EXPECT_NEAR(ga.tail(3).maxCoeff(), -1e-2, 1e-15);
}

TEST(Loss, SaturatedClipContributesNoGradient) {
  Rng rng(41);
  GaussianPolicy pol(3, 3, 2, 4, -0.5, rng);
  RolloutBuffer buf;
  buf.allocate(1, 1, 3, 3, 2);
  Rng fill(42);
  buf.obs.col(0) = fill.normal_vector(3, 1.0);
  buf.priv.col(0) = fill.normal_vector(3, 1.0);
  VectorXd logp;
  buf.actions = pol.sample(buf.obs, fill, logp);
  // ratio = exp(logp_new - logp_old) = 1.5, far past 1 + 0.2
  buf.logp(0) = logp(0) - std::log(1.5);
  buf.values(0) = 0.0;
  buf.advantages = VectorXd::Constant(1, 2.0);
  buf.returns = VectorXd::Constant(1, 0.0);

  Eigen::VectorXd ga, gc;
  const PpoLossTerms lt =
      ppo_loss_grad(pol, buf, {0}, 0.2, 0.0, 0.5, &ga, &gc);
  EXPECT_DOUBLE_EQ(ga.cwiseAbs().maxCoeff(), 0.0);
  // the clipped branch pins the surrogate at (1 + clip) * adv
  EXPECT_NEAR(lt.policy, -1.2 * 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(lt.clip_fraction, 1.0);
}

TEST(Loss, AnalyticGradientsMatchCentralDifferences) {
  Rng rng(51);
  GaussianPolicy pol(3, 4, 2, 4, -0.4, rng);
  Rng fill(52);
  RolloutBuffer buf = toy_buffer(pol, 3, 2, fill);

  std::vector<int> cols(buf.size());
  std::iota(cols.begin(), cols.end(), 0);
  const double clip = 0.2, ent = 1e-2, vc = 0.5;
  Eigen::VectorXd ga, gc;
  ppo_loss_grad(pol, buf, cols, clip, ent, vc, &ga, &gc);

  const double h = 1e-6;
  auto loss_at = [&] {
    return ppo_loss_grad(pol, buf, cols, clip, ent, vc, nullptr, nullptr)
        .total;
  };
  // every actor parameter including the log-std tail
  VectorXd pa = pol.actor_params();
  for (int k = 0; k < pa.size(); ++k) {
    const double keep = pa(k);
    pa(k) = keep + h;
    pol.set_actor_params(pa);
    const double up = loss_at();
    pa(k) = keep - h;
    pol.set_actor_params(pa);
    const double dn = loss_at();
    pa(k) = keep;
    pol.set_actor_params(pa);
    const double fd = (up - dn) / (2.0 * h);
    EXPECT_NEAR(ga(k), fd, 1e-4 * std::max(1.0, std::abs(fd))) << "actor " << k;
  }
  VectorXd pc = pol.critic().flat_params();
  for (int k = 0; k < pc.size(); ++k) {
    const double keep = pc(k);
    pc(k) = keep + h;
    pol.critic().set_flat_params(pc);
    const double up = loss_at();
    pc(k) = keep - h;
    pol.critic().set_flat_params(pc);
    const double dn = loss_at();
    pc(k) = keep;
    pol.critic().set_flat_params(pc);
    const double fd = (up - dn) / (2.0 * h);
    EXPECT_NEAR(gc(k), fd, 1e-4 * std::max(1.0, std::abs(fd)))
        << "critic " << k;
  }
}

TEST(Update, KlEarlyStopTriggers) {
  Rng rng(61);
  GaussianPolicy pol(4, 4, 3, 8, -0.5, rng);
  Rng fill(62);
  RolloutBuffer buf = toy_buffer(pol, 4, 4, fill);
  RunConfig cfg = quiet_config();
  cfg.kl_stop = 1e-12;  // stored log-probs are offset, so KL > 0 at once
  Adam aa(pol.actor_param_count(), cfg.learning_rate);
  Adam ac(pol.critic().param_count(), cfg.learning_rate);
  Rng order(7);
  const UpdateStats st = ppo_update(pol, buf, cfg, aa, ac, order);
  EXPECT_EQ(st.epochs_ran, 0);
  EXPECT_EQ(st.minibatches_ran, 1);
}

TEST(Update, ActorNeverReadsThePrivilegedState) {
  Rng rng(71);
  GaussianPolicy a(4, 6, 3, 8, -0.5, rng);
  GaussianPolicy b = a;
  Rng fill(72);
  RolloutBuffer buf1 = toy_buffer(a, 4, 4, fill);
  RolloutBuffer buf2 = buf1;
  buf2.priv.setRandom();  // completely different privileged inputs
  buf2.values = a.values(buf2.priv);
  buf2.returns = buf2.values + (buf1.returns - buf1.values);

  RunConfig cfg = quiet_config();
  Adam aa1(a.actor_param_count(), cfg.learning_rate);
  Adam ac1(a.critic().param_count(), cfg.learning_rate);
  Adam aa2(b.actor_param_count(), cfg.learning_rate);
  Adam ac2(b.critic().param_count(), cfg.learning_rate);
  Rng o1(9), o2(9);
  ppo_update(a, buf1, cfg, aa1, ac1, o1);
  ppo_update(b, buf2, cfg, aa2, ac2, o2);
  EXPECT_TRUE(a.actor_params() == b.actor_params());
  EXPECT_FALSE(a.critic().flat_params() == b.critic().flat_params());
}

// ---------- collection ---------- //

TEST(Collect, DeterministicTwiceFromTheSameSeeds) {
  const RunConfig cfg = quiet_config();
  auto run = [&cfg] {
    VecEnv venv(cfg, nullptr, cfg.num_envs, cfg.seed);
    Rng init(1), draws(2);
    GaussianPolicy pol(venv.obs_dim(), venv.priv_dim(), venv.act_dim(), 8,
                       -0.7, init);
    MatrixXd obs(venv.obs_dim(), venv.size());
    MatrixXd priv(venv.priv_dim(), venv.size());
    for (int i = 0; i < venv.size(); ++i) {
      obs.col(i) = venv.env(i).observation();
      priv.col(i) = venv.env(i).privileged();
    }
    std::vector<double> ret(venv.size(), 0.0);
    std::vector<int> len(venv.size(), 0);
    return collect_rollout(pol, venv, 6, draws, obs, priv, ret, len);
  };
  const RolloutBuffer x = run();
  const RolloutBuffer y = run();
  EXPECT_TRUE(x.obs == y.obs);
  EXPECT_TRUE(x.actions == y.actions);
  EXPECT_TRUE(x.logp == y.logp);
  EXPECT_TRUE(x.rewards == y.rewards);
  EXPECT_TRUE(x.values == y.values);
}

TEST(Collect, StoredLogProbsMatchRecomputation) {
  const RunConfig cfg = quiet_config();
  VecEnv venv(cfg, nullptr, cfg.num_envs, cfg.seed);
  Rng init(1), draws(2);
  GaussianPolicy pol(venv.obs_dim(), venv.priv_dim(), venv.act_dim(), 8,
                     -0.7, init);
  MatrixXd obs(venv.obs_dim(), venv.size());
  MatrixXd priv(venv.priv_dim(), venv.size());
  for (int i = 0; i < venv.size(); ++i) {
    obs.col(i) = venv.env(i).observation();
    priv.col(i) = venv.env(i).privileged();
  }
  std::vector<double> ret(venv.size(), 0.0);
  std::vector<int> len(venv.size(), 0);
  const RolloutBuffer buf =
      collect_rollout(pol, venv, 5, draws, obs, priv, ret, len);
  const VectorXd again = pol.log_prob(pol.mean(buf.obs), buf.actions);
  EXPECT_LT((buf.logp - again).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Collect, SingleStepSingleEnvBuffer) {
  RunConfig cfg = quiet_config();
  cfg.num_envs = 1;
  VecEnv venv(cfg, nullptr, 1, cfg.seed);
  Rng init(1), draws(2);
  GaussianPolicy pol(venv.obs_dim(), venv.priv_dim(), venv.act_dim(), 8,
                     -0.7, init);
  MatrixXd obs = venv.env(0).observation();
  MatrixXd priv = venv.env(0).privileged();
  std::vector<double> ret(1, 0.0);
  std::vector<int> len(1, 0);
  const RolloutBuffer buf =
      collect_rollout(pol, venv, 1, draws, obs, priv, ret, len);
  EXPECT_EQ(buf.size(), 1);
  EXPECT_EQ(buf.n, 1);
  EXPECT_EQ(buf.t, 1);
}

TEST(Collect, TimeoutRecordsABootstrapValue) {
  RunConfig cfg = quiet_config();
  cfg.max_steps = 4;  // every member times out inside one window
  VecEnv venv(cfg, nullptr, cfg.num_envs, cfg.seed);
  Rng init(1), draws(2);
  GaussianPolicy pol(venv.obs_dim(), venv.priv_dim(), venv.act_dim(), 8,
                     -0.7, init);
  MatrixXd obs(venv.obs_dim(), venv.size());
  MatrixXd priv(venv.priv_dim(), venv.size());
  for (int i = 0; i < venv.size(); ++i) {
    obs.col(i) = venv.env(i).observation();
    priv.col(i) = venv.env(i).privileged();
  }
  std::vector<double> ret(venv.size(), 0.0);
  std::vector<int> len(venv.size(), 0);
  CollectStats cs;
  const RolloutBuffer buf =
      collect_rollout(pol, venv, 6, draws, obs, priv, ret, len, &cs);
  int truncations = 0;
  for (int j = 0; j < buf.size(); ++j)
    if (buf.truncated[j]) {
      ++truncations;
      EXPECT_TRUE(buf.done[j]);
      EXPECT_TRUE(std::isfinite(buf.boot(j)));
    }
  EXPECT_EQ(truncations, cfg.num_envs);  // one timeout per member at step 4
  EXPECT_EQ(cs.episodes_done, cfg.num_envs);
  EXPECT_NEAR(cs.mean_length, 4.0, 1e-12);
}

// ---------- learning smoke ---------- //

// stateless task: pick the action that matches a fixed target
TEST(Learning, ReachesAFixedTargetAction) {
  const int act = 6, obs_dim = 4, batch = 256;
  Rng rng(81);
  GaussianPolicy pol(obs_dim, obs_dim, act, 16, -0.7, rng);
  VectorXd target(act);
  for (int i = 0; i < act; ++i) target(i) = (i % 2 == 0 ? 0.6 : -0.6);
  const MatrixXd obs = MatrixXd::Constant(obs_dim, batch, 0.1);

  RunConfig cfg;
  cfg.learning_rate = 3e-3;
  cfg.minibatches = 4;
  cfg.hidden = 16;

  Adam aa(pol.actor_param_count(), cfg.learning_rate);
  Adam ac(pol.critic().param_count(), cfg.learning_rate);
  Rng draws(82), order(83);

  auto mean_return = [&](int samples) {
    const MatrixXd o = MatrixXd::Constant(obs_dim, samples, 0.1);
    VectorXd lp;
    Rng eval(999);  // fixed eval stream keeps the comparison fair
    const MatrixXd a = pol.sample(o, eval, lp);
    double sum = 0.0;
    for (int c = 0; c < samples; ++c)
      sum += -(a.col(c) - target).squaredNorm();
    return sum / samples;
  };

  const double before = mean_return(2048);
  for (int update = 0; update < 200; ++update) {
    RolloutBuffer buf;
    buf.allocate(batch, 1, obs_dim, obs_dim, act);
    buf.obs = obs;
    buf.priv = obs;
    VectorXd lp;
    buf.actions = pol.sample(obs, draws, lp);
    buf.logp = lp;
    buf.values = pol.values(buf.priv);
    for (int c = 0; c < batch; ++c) {
      buf.rewards(c) = -(buf.actions.col(c) - target).squaredNorm();
      buf.done[c] = 1;  // one-step episodes
    }
    compute_gae(buf, 0.99, 0.95);
    ppo_update(pol, buf, cfg, aa, ac, order);
  }
  const double after = mean_return(2048);
  // at least halfway from the random policy toward a perfect score
  EXPECT_GT(after, before * 0.5) << "before " << before << " after " << after;
  EXPECT_GT(after, -1.5) << "should end close to the target";
}

// ---------- checkpoints ---------- //

TEST(Checkpoint, RoundTripIsBitExact) {
  Rng rng(91);
  GaussianPolicy pol(5, 7, 3, 8, -0.5, rng);
  const std::string path = ::testing::TempDir() + "/pol.tspk";
  save_checkpoint(pol, 0xabcdefull, 1234, path);
  const Checkpoint ck = load_checkpoint(path);
  EXPECT_EQ(ck.config_hash, 0xabcdefull);
  EXPECT_EQ(ck.env_steps, 1234);
  EXPECT_TRUE(ck.policy.actor_params() == pol.actor_params());
  EXPECT_TRUE(ck.policy.critic().flat_params() == pol.critic().flat_params());
  EXPECT_EQ(ck.policy.checksum(), pol.checksum());
}

TEST(Checkpoint, CorruptionIsCaught) {
  Rng rng(92);
  GaussianPolicy pol(4, 4, 2, 4, -0.5, rng);
  const std::string path = ::testing::TempDir() + "/bad.tspk";
  save_checkpoint(pol, 1, 1, path);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(200);
    char byte = 0;
    f.read(&byte, 1);
    byte = static_cast<char>(byte ^ 0x5a);  // guaranteed to change the byte
    f.seekp(200);
    f.write(&byte, 1);
  }
  EXPECT_THROW(load_checkpoint(path), InputError);
  std::ofstream(path, std::ios::binary) << "MEHX garbage";
  EXPECT_THROW(load_checkpoint(path), InputError);
}

// ---------- trainer ---------- //

TEST(Trainer, IterationsAreDeterministicAndCounted) {
  RunConfig cfg = quiet_config();
  cfg.max_steps = 12;
  auto run = [&cfg] {
    PpoTrainer tr(cfg, nullptr);
    std::string rows;
    for (int i = 0; i < 3; ++i)
      rows += PpoTrainer::csv_row(tr.iterate()) + "\n";
    return std::make_pair(rows, tr.env_steps());
  };
  const auto [rows1, steps1] = run();
  const auto [rows2, steps2] = run();
  EXPECT_EQ(rows1, rows2);
  EXPECT_EQ(steps1, 3 * cfg.num_envs * cfg.horizon);
  EXPECT_NE(rows1.find("1,16,"), std::string::npos) << rows1;
}

TEST(Trainer, StatsStayFinite) {
  RunConfig cfg = quiet_config();
  PpoTrainer tr(cfg, nullptr);
  for (int i = 0; i < 2; ++i) {
    const PpoTrainer::IterStats st = tr.iterate();
    EXPECT_TRUE(std::isfinite(st.collect.mean_reward));
    EXPECT_TRUE(std::isfinite(st.update.policy_loss));
    EXPECT_TRUE(std::isfinite(st.update.value_loss));
    EXPECT_TRUE(std::isfinite(st.update.kl));
    EXPECT_GE(st.update.minibatches_ran, 1);
  }
}

}  // namespace
}  // namespace tacspin
