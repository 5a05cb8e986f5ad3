// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line entry point. Subcommands:
//   train             PPO on the lid environment, checkpoints + curve CSV
//   eval              roll out a checkpoint, the scripted gait, or random
//                     actions; writes traces, per-episode CSV and a report
//   ablate            train + eval every reward set, one comparison table
//   pretrain-encoder  scripted rollouts across the friction range, trains
//                     and freezes the tactile encoder
//   export            recompute metrics from stored trace files

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tacspin/encoder.hpp"
#include "tacspin/env.hpp"
#include "tacspin/gait.hpp"
#include "tacspin/metrics.hpp"
#include "tacspin/ppo.hpp"
#include "tacspin/trace.hpp"
#include "tacspin/version.hpp"

namespace fs = std::filesystem;
using namespace tacspin;

namespace {

// ---------- config plumbing ---------- //

// every subcommand takes --config plus a handful of override flags; a flag
// only touches the config when the user actually passed it
struct SharedFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir, reward_set, shape, encoder_path;
  int num_envs = 0, hidden = 0, horizon = 0, max_steps = 0, episodes = 0;
  std::int64_t total_steps = 0;
  bool no_randomize = false;

  CLI::Option *seed_o = nullptr, *out_o = nullptr, *set_o = nullptr,
              *shape_o = nullptr, *enc_o = nullptr, *envs_o = nullptr,
              *hidden_o = nullptr, *horizon_o = nullptr, *maxsteps_o = nullptr,
              *episodes_o = nullptr, *steps_o = nullptr, *norand_o = nullptr;
};

void add_shared_flags(CLI::App* sub, SharedFlags& f) {
  sub->add_option("--config", f.config_path, "YAML config file");
  f.seed_o = sub->add_option("--seed", f.seed, "run seed");
  f.out_o = sub->add_option("--out", f.out_dir, "output directory");
  f.set_o = sub->add_option("--reward-set", f.reward_set,
                            "tac2motion|cpr_rr|crr_rr|baseline");
  f.shape_o = sub->add_option("--shape", f.shape, "cylinder|square|hexagon");
  f.enc_o = sub->add_option("--encoder", f.encoder_path,
                            "frozen tactile encoder file");
  f.envs_o = sub->add_option("--num-envs", f.num_envs, "parallel members");
  f.hidden_o = sub->add_option("--hidden", f.hidden, "network hidden width");
  f.horizon_o = sub->add_option("--horizon", f.horizon,
                                "steps per member per PPO iteration");
  f.maxsteps_o = sub->add_option("--max-steps", f.max_steps,
                                 "episode step limit");
  f.episodes_o = sub->add_option("--episodes", f.episodes,
                                 "evaluation episode count");
  f.steps_o = sub->add_option("--total-steps", f.total_steps,
                              "environment steps to train for");
  f.norand_o = sub->add_flag("--no-randomize", f.no_randomize,
                             "disable domain randomization");
}

RunConfig resolve_config(const SharedFlags& f) {
  RunConfig cfg =
      f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
  if (f.seed_o->count()) cfg.seed = f.seed;
  if (f.out_o->count()) cfg.out_dir = f.out_dir;
  if (f.set_o->count()) cfg.reward_set = f.reward_set;
  if (f.shape_o->count()) cfg.shape = f.shape;
  if (f.enc_o->count()) cfg.encoder_path = f.encoder_path;
  if (f.envs_o->count()) cfg.num_envs = f.num_envs;
  if (f.hidden_o->count()) cfg.hidden = f.hidden;
  if (f.horizon_o->count()) cfg.horizon = f.horizon;
  if (f.maxsteps_o->count()) cfg.max_steps = f.max_steps;
  if (f.episodes_o->count()) cfg.eval_episodes = f.episodes;
  if (f.steps_o->count()) cfg.total_steps = f.total_steps;
  if (f.norand_o->count()) cfg.randomize = false;
  cfg.validate();
  return cfg;
}

// effective config + build id next to every run's outputs
void stamp_run_dir(const RunConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);
  save_config(cfg, (dir / "config.yaml").string());
  std::ofstream(dir / "build_id.txt") << kBuildId << "\n";
}

std::optional<TactileEncoder> load_encoder_if_set(const RunConfig& cfg) {
  if (cfg.encoder_path.empty()) return std::nullopt;
  return TactileEncoder::load(cfg.encoder_path);
}

// ---------- training ---------- //

// full PPO run under dir; returns the trained policy for in-process eval
GaussianPolicy train_run(const RunConfig& cfg, const TactileEncoder* enc,
                         const fs::path& dir) {
  stamp_run_dir(cfg, dir);
  PpoTrainer trainer(cfg, enc);
  const std::int64_t batch =
      static_cast<std::int64_t>(cfg.num_envs) * cfg.horizon;
  const int iters = static_cast<int>((cfg.total_steps + batch - 1) / batch);

  std::ofstream csv(dir / "training.csv");
  if (!csv) throw ConfigError("cannot write " + (dir / "training.csv").string());
  csv << PpoTrainer::csv_header() << "\n";
  for (int i = 1; i <= iters; ++i) {
    const PpoTrainer::IterStats st = trainer.iterate();
    csv << PpoTrainer::csv_row(st) << "\n";
    if (cfg.checkpoint_every > 0 && i % cfg.checkpoint_every == 0) {
      char name[48];
      std::snprintf(name, sizeof(name), "ckpt_%06d.tspk", i);
      save_checkpoint(trainer.policy(), config_hash(cfg), trainer.env_steps(),
                      (dir / name).string());
    }
    if (i % 10 == 0 || i == iters)
      std::fprintf(stderr,
                   "[%s] iter %d/%d steps %lld mean_d_angle %.5f kl %.4f\n",
                   cfg.reward_set.c_str(), i, iters,
                   static_cast<long long>(st.env_steps),
                   st.collect.mean_d_angle, st.update.kl);
  }
  save_checkpoint(trainer.policy(), config_hash(cfg), trainer.env_steps(),
                  (dir / "ckpt_final.tspk").string());
  return trainer.policy();
}

int cmd_train(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  const auto enc = load_encoder_if_set(cfg);
  train_run(cfg, enc ? &*enc : nullptr, dir);
  std::cout << "trained " << cfg.reward_set << " on " << cfg.shape << " for "
            << cfg.total_steps << " steps\n"
            << "outputs: " << (dir / "training.csv").string() << ", "
            << (dir / "ckpt_final.tspk").string() << "\n";
  return 0;
}

// ---------- evaluation ---------- //

using ActionFn =
    std::function<Eigen::VectorXd(const LidEnv& env, long step)>;

// one episode at a pinned friction; the trace carries everything needed to
// recompute the metrics offline
EpisodeTrace roll_episode(LidEnv& env, const ActionFn& act, double friction,
                          const RunConfig& cfg, const std::string& method) {
  env.reset_with_friction(friction);
  EpisodeTrace tr;
  tr.shape = cfg.shape;
  tr.method = method;
  tr.dt = cfg.dt;
  tr.friction = friction;
  tr.seed = cfg.seed;
  long t = 0;
  while (!env.done()) {
    const StepOut s = env.step(act(env, t));
    TraceStep step;
    step.lid_angle = s.lid_angle;
    step.d_angle = s.d_angle;
    step.reward = s.reward;
    step.contact = s.contact;
    step.grasp = s.grasp;
    step.action = s.action_applied;
    tr.steps.push_back(std::move(step));
    if (s.done) tr.cause = s.cause;
    ++t;
  }
  return tr;
}

// episodes spread evenly across the friction range so every report covers
// the whole randomization interval rather than a lucky draw
double stratified_friction(const RunConfig& cfg, int episode, int episodes) {
  if (episodes <= 1) return 0.5 * (cfg.friction_low + cfg.friction_high);
  return cfg.friction_low + (cfg.friction_high - cfg.friction_low) * episode /
                                (episodes - 1);
}

std::vector<EpisodeTrace> run_eval_episodes(const RunConfig& cfg,
                                            const TactileEncoder* enc,
                                            const ActionFn& act,
                                            const std::string& method) {
  LidEnv env(cfg, enc, mix_seed(cfg.seed, 0xe7a1));
  std::vector<EpisodeTrace> traces;
  traces.reserve(cfg.eval_episodes);
  for (int ep = 0; ep < cfg.eval_episodes; ++ep)
    traces.push_back(roll_episode(
        env, act, stratified_friction(cfg, ep, cfg.eval_episodes), cfg,
        method));
  return traces;
}

void write_eval_outputs(const std::vector<EpisodeTrace>& traces,
                        const RunConfig& cfg, const fs::path& dir,
                        bool keep_traces) {
  if (keep_traces) {
    fs::create_directories(dir / "traces");
    for (std::size_t i = 0; i < traces.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "ep_%04zu.jsonl", i);
      save_trace(traces[i], (dir / "traces" / name).string());
    }
  }
  std::ofstream eps(dir / "episodes.csv");
  eps << episode_csv_header() << "\n";
  for (std::size_t i = 0; i < traces.size(); ++i)
    eps << episode_csv_row(traces[i], static_cast<int>(i), cfg.dt) << "\n";
  const MetricReport rep = aggregate(traces, cfg.dt);
  write_report_csv({rep}, (dir / "report.csv").string());
  std::cout << format_report_table({rep});
}

int cmd_eval(const RunConfig& cfg, const std::string& policy,
             const std::string& checkpoint_path) {
  const fs::path dir(cfg.out_dir);
  stamp_run_dir(cfg, dir);
  const auto enc = load_encoder_if_set(cfg);
  const TactileEncoder* encp = enc ? &*enc : nullptr;

  ActionFn act;
  std::string method;
  std::optional<Checkpoint> ck;
  std::optional<GaitSchedule> gait;
  auto rng = std::make_shared<Rng>(mix_seed(cfg.seed, 0x4a2d));

  if (policy == "checkpoint") {
    if (checkpoint_path.empty())
      throw ConfigError("the checkpoint policy needs --checkpoint FILE");
    ck = load_checkpoint(checkpoint_path);
    if (ck->config_hash != config_hash(cfg))
      std::fprintf(stderr,
                   "note: checkpoint was trained under a different config\n");
    method = cfg.reward_set;
    act = [&ck](const LidEnv& env, long) {
      if (env.obs_dim() != ck->policy.obs_dim())
        throw ConfigError("checkpoint expects a different observation size; "
                          "encoder settings probably differ");
      return ck->policy.actor().forward1(env.observation());
    };
  } else if (policy == "scripted") {
    method = "scripted";
    act = [&gait](const LidEnv& env, long t) {
      if (!gait)
        gait = make_gait(env.kinematics(), env.config().hand, env.frames());
      return gait_action(env.hand(), env.lid(), *gait, env.kinematics(), t);
    };
  } else if (policy == "random") {
    method = "random";
    act = [rng](const LidEnv& env, long) {
      return rng->uniform_vector(env.act_dim(), -1.0, 1.0);
    };
  } else {
    throw ConfigError("unknown policy: " + policy +
                      " (expected checkpoint|scripted|random)");
  }

  const std::vector<EpisodeTrace> traces =
      run_eval_episodes(cfg, encp, act, method);
  write_eval_outputs(traces, cfg, dir, true);
  return 0;
}

// ---------- ablation ---------- //

int cmd_ablate(const RunConfig& base) {
  const fs::path dir(base.out_dir);
  stamp_run_dir(base, dir);
  const auto enc = load_encoder_if_set(base);
  const TactileEncoder* encp = enc ? &*enc : nullptr;

  std::vector<MetricReport> rows;
  for (const std::string set :
       {"tac2motion", "cpr_rr", "crr_rr", "baseline"}) {
    RunConfig cfg = base;
    cfg.reward_set = set;
    cfg.out_dir = (dir / set).string();
    const GaussianPolicy pol = train_run(cfg, encp, dir / set);
    const ActionFn act = [&pol](const LidEnv& env, long) {
      return pol.actor().forward1(env.observation());
    };
    const std::vector<EpisodeTrace> traces =
        run_eval_episodes(cfg, encp, act, set);
    std::ofstream eps(dir / set / "episodes.csv");
    eps << episode_csv_header() << "\n";
    for (std::size_t i = 0; i < traces.size(); ++i)
      eps << episode_csv_row(traces[i], static_cast<int>(i), cfg.dt) << "\n";
    rows.push_back(aggregate(traces, cfg.dt));
  }
  write_report_csv(rows, (dir / "ablation.csv").string());
  const std::string table = format_report_table(rows);
  std::ofstream(dir / "ablation.txt") << table;
  std::cout << table;
  return 0;
}

// ---------- encoder pretraining ---------- //

int cmd_pretrain_encoder(const RunConfig& cfg, std::string out_file) {
  if (out_file.empty())
    out_file = cfg.encoder_path.empty() ? "encoder.tsen" : cfg.encoder_path;

  // scripted rollouts, frictions spread across the randomization range and
  // one fresh noise stream per episode so the encoder generalizes across
  // runs instead of memorizing a single stream
  GaitSchedule gait;
  std::vector<Eigen::VectorXd> xs;
  std::vector<double> ys;
  for (int ep = 0; ep < cfg.pretrain_episodes; ++ep) {
    const double f = stratified_friction(cfg, ep, cfg.pretrain_episodes);
    LidEnv env(cfg, nullptr, mix_seed(cfg.seed, 0x93c0 + ep));
    if (ep == 0) gait = make_gait(env.kinematics(), cfg.hand, env.frames());
    env.reset_with_friction(f);
    long t = 0;
    while (!env.done()) {
      env.step(gait_action(env.hand(), env.lid(), gait, env.kinematics(), t));
      ++t;
      // skip the settling phase, then thin the stream a little; dense windows
      // keep the per-rollout mean prediction stable
      if (t >= cfg.enc_burn_in && t % 2 == 0) {
        xs.push_back(env.window().flatten());
        ys.push_back(f);
      }
    }
  }
  if (xs.empty()) throw InputError("no pretraining samples collected");

  Eigen::MatrixXd x(xs.front().size(), xs.size());
  Eigen::VectorXd y(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x.col(static_cast<Eigen::Index>(i)) = xs[i];
    y(static_cast<Eigen::Index>(i)) = ys[i];
  }

  Rng rng(mix_seed(cfg.seed, 0x30c0de));
  TactileEncoder enc = TactileEncoder::make_mlp(
      cfg.enc_window, 5, cfg.sensors_per_finger, cfg.enc_dim, cfg.enc_hidden,
      rng);
  const EncoderPretrainResult res =
      enc.pretrain(x, y, cfg.pretrain_epochs, cfg.pretrain_lr, 64, rng);
  enc.save(out_file);
  std::cout << "pretrained encoder on " << xs.size() << " windows from "
            << cfg.pretrain_episodes << " scripted episodes\n"
            << "friction loss " << fmt_g(res.initial_loss) << " -> "
            << fmt_g(res.final_loss) << "\n"
            << "saved " << out_file << " (checksum " << enc.checksum()
            << ")\n";
  return 0;
}

// ---------- trace export ---------- //

int cmd_export(const std::vector<std::string>& inputs,
               const std::string& out_dir) {
  std::vector<std::string> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& e : fs::directory_iterator(in))
        if (e.path().extension() == ".jsonl") files.push_back(e.path().string());
    } else {
      files.push_back(in);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no trace files to export");

  std::vector<EpisodeTrace> traces;
  traces.reserve(files.size());
  for (const std::string& f : files) traces.push_back(load_trace(f));
  const double dt = traces.front().dt;
  for (const EpisodeTrace& tr : traces)
    if (tr.dt != dt) throw MetricError("traces disagree on dt");

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  std::ofstream eps(dir / "episodes.csv");
  eps << episode_csv_header() << "\n";
  for (std::size_t i = 0; i < traces.size(); ++i)
    eps << episode_csv_row(traces[i], static_cast<int>(i), dt) << "\n";
  const MetricReport rep = aggregate(traces, dt);
  write_report_csv({rep}, (dir / "report.csv").string());
  std::cout << format_report_table({rep});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale tactile lid-opening simulator and RL harness"};
  app.set_version_flag("--version", std::string("tacspin ") + kBuildId);
  app.require_subcommand(1);

  SharedFlags train_f, eval_f, ablate_f, pre_f;
  std::string eval_policy = "checkpoint", eval_checkpoint;
  std::string pre_out;
  std::vector<std::string> export_inputs;
  std::string export_out = "runs/export";

  CLI::App* train = app.add_subcommand("train", "train a PPO policy");
  add_shared_flags(train, train_f);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a policy");
  add_shared_flags(eval, eval_f);
  eval->add_option("--policy", eval_policy, "checkpoint|scripted|random");
  eval->add_option("--checkpoint", eval_checkpoint, "policy checkpoint file");

  CLI::App* ablate =
      app.add_subcommand("ablate", "train and compare all reward sets");
  add_shared_flags(ablate, ablate_f);

  CLI::App* pre = app.add_subcommand("pretrain-encoder",
                                     "train and freeze the tactile encoder");
  add_shared_flags(pre, pre_f);
  pre->add_option("--out-file", pre_out, "encoder output file");

  CLI::App* exp =
      app.add_subcommand("export", "recompute metrics from trace files");
  exp->add_option("paths", export_inputs, "trace files or directories")
      ->required();
  exp->add_option("--out", export_out, "output directory");

  try {
    app.parse(argc, argv);
    if (train->parsed()) return cmd_train(resolve_config(train_f));
    if (eval->parsed())
      return cmd_eval(resolve_config(eval_f), eval_policy, eval_checkpoint);
    if (ablate->parsed()) return cmd_ablate(resolve_config(ablate_f));
    if (pre->parsed())
      return cmd_pretrain_encoder(resolve_config(pre_f), pre_out);
    if (exp->parsed()) return cmd_export(export_inputs, export_out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
