#include "picrl/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "picrl/checkpoint.hpp"
#include "picrl/csvexport.hpp"
#include "picrl/error.hpp"
#include "picrl/physics.hpp"
#include "picrl/scenario.hpp"
#include "picrl/version.hpp"

namespace picrl::learner {

namespace {

// Independent random streams derived from the master seed.
enum Stream : std::uint64_t {
  kInitStream = 0,
  kEnvStream = 1,
  kNoiseStream = 2,
  kSampleStream = 3,
  kShuffleStream = 4,
};

std::vector<std::size_t> agent_groups(const scenarios::TaskSpec& spec) {
  std::vector<std::size_t> g(spec.num_agents);
  for (std::size_t i = 0; i < spec.num_agents; ++i) g[i] = spec.group_of(i);
  return g;
}

// The last ten checkpoint episodes (1-based), evenly spaced over the tail of
// the run: episodes - k * stride for k = 9..0 with stride = episodes / 100.
std::vector<std::uint64_t> checkpoint_episodes(std::uint64_t episodes) {
  std::vector<std::uint64_t> out;
  if (episodes == 0) return out;
  const std::uint64_t stride = std::max<std::uint64_t>(1, episodes / 100);
  for (int k = 9; k >= 0; --k) {
    const std::uint64_t back = static_cast<std::uint64_t>(k) * stride;
    if (back >= episodes) continue;
    out.push_back(episodes - back);
  }
  return out;
}

std::string checkpoint_name(std::uint64_t episode) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "ckpt/ep_%06llu.bin",
                static_cast<unsigned long long>(episode));
  return buf;
}

void save_actor_checkpoint(const std::filesystem::path& path, std::vector<AgentNets>& nets) {
  std::vector<std::pair<std::string, const numerics::ParamSet*>> sets;
  sets.reserve(nets.size());
  for (std::size_t i = 0; i < nets.size(); ++i)
    sets.emplace_back("agent" + std::to_string(i) + "/actor", &nets[i].actor.params());
  io::save_checkpoint(path, sets);
}

}  // namespace

scenarios::TaskSpec task_for(const config::TrainConfig& cfg) {
  scenarios::TaskSpec spec = scenarios::TaskSpec::make(cfg.task, cfg.agents);
  if (cfg.episode_length > 0) spec.episode_length = cfg.episode_length;
  return spec;
}

critics::CriticConfig critic_config_for(const config::TrainConfig& cfg,
                                        const scenarios::TaskSpec& spec) {
  critics::CriticConfig cc;
  cc.num_agents = spec.num_agents;
  cc.obs_dim = spec.obs_dim();
  cc.act_dim = scenarios::kActionDim;
  cc.hidden = cfg.hidden;
  cc.pool = cfg.pool;
  cc.graph = cfg.graph;
  cc.agent_group = agent_groups(spec);
  cc.group_dim =
      spec.heterogeneous() && cfg.critic == critics::CriticKind::kPic ? 2 : 0;
  return cc;
}

std::vector<AgentNets> build_agent_nets(const config::TrainConfig& cfg,
                                        const scenarios::TaskSpec& spec, Rng& rng) {
  const critics::CriticConfig cc = critic_config_for(cfg, spec);
  std::vector<AgentNets> nets;
  nets.reserve(spec.num_agents);
  for (std::size_t i = 0; i < spec.num_agents; ++i)
    nets.emplace_back(spec.obs_dim(), scenarios::kActionDim, cfg.hidden, cfg.critic, cc, rng);
  return nets;
}

std::vector<Actor> build_actors(const config::TrainConfig& cfg, const scenarios::TaskSpec& spec) {
  Rng rng(0);
  std::vector<Actor> actors;
  actors.reserve(spec.num_agents);
  for (std::size_t i = 0; i < spec.num_agents; ++i)
    actors.emplace_back(spec.obs_dim(), scenarios::kActionDim, cfg.hidden, rng);
  return actors;
}

TrainResult train(const config::TrainConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  const scenarios::TaskSpec spec = task_for(cfg);
  const JointDims dims{spec.num_agents, spec.obs_dim(), scenarios::kActionDim};

  const Rng master(cfg.seed);
  Rng init_rng = master.substream(kInitStream);
  const Rng env_root = master.substream(kEnvStream);
  Rng noise_rng = master.substream(kNoiseStream);
  Rng sample_rng = master.substream(kSampleStream);
  Rng shuffle_rng = master.substream(kShuffleStream);

  std::vector<AgentNets> nets = build_agent_nets(cfg, spec, init_rng);
  ReplayBuffer buffer(cfg.buffer);

  const std::filesystem::path dir(cfg.out);
  std::filesystem::create_directories(dir / "ckpt");

  io::RunManifest manifest;
  manifest.version = kVersion;
  manifest.config = cfg;

  const std::vector<std::uint64_t> ckpt_at = checkpoint_episodes(cfg.episodes);
  std::vector<evalstat::MetricRow> metrics;
  metrics.reserve(cfg.episodes);

  const bool augment = cfg.critic == critics::CriticKind::kMlpAug;
  std::uint64_t global_step = 0;
  double last_loss = 0.0, last_obj = 0.0;
  auto elapsed_s = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  try {
    for (std::uint64_t e = 0; e < cfg.episodes; ++e) {
      const double frac = static_cast<double>(e) / static_cast<double>(cfg.episodes);
      const double lr_e = cfg.lr * (1.0 - frac);
      const double noise_e = cfg.noise_start * (1.0 - frac);

      Rng env_rng = env_root.substream(e);
      engine::World world = scenarios::spawn(spec, env_rng);
      numerics::Matrix obs = scenarios::observe_all(world, spec);

      double ep_return = 0.0;
      double loss_sum = 0.0, obj_sum = 0.0;
      std::size_t update_rounds = 0;

      for (std::size_t t = 0; t < spec.episode_length; ++t) {
        engine::JointAction actions(world.num_actors);
        for (std::size_t i = 0; i < spec.num_agents; ++i) {
          const std::vector<double> a = select_action(
              nets[i].actor, std::span<const double>(obs.row_ptr(i), dims.obs_dim), noise_e,
              noise_rng);
          actions.set_row(i, a.data());
        }
        scenarios::fill_prey_actions(world, spec, actions);
        engine::step(world, actions);

        numerics::Matrix next_obs = scenarios::observe_all(world, spec);
        const std::vector<double> rewards = scenarios::global_reward(world, spec);
        ep_return += rewards[0];

        Transition tr;
        tr.obs.assign(obs.data(), obs.data() + obs.size());
        tr.act.resize(dims.agents * dims.act_dim);
        for (std::size_t i = 0; i < dims.agents; ++i)
          for (std::size_t c = 0; c < dims.act_dim; ++c)
            tr.act[i * dims.act_dim + c] = actions(i, c);
        tr.reward = rewards;
        tr.next_obs.assign(next_obs.data(), next_obs.data() + next_obs.size());
        tr.terminal = false;  // fixed-horizon truncation, not termination
        buffer.push(std::move(tr));

        obs = std::move(next_obs);
        ++global_step;

        if (buffer.size() >= cfg.batch && global_step % cfg.update_interval == 0) {
          for (std::size_t i = 0; i < dims.agents; ++i) {
            Batch batch = buffer.sample(cfg.batch, sample_rng);
            if (augment) {
              Batch shuffled = batch;
              shuffle_augment(shuffled, dims, shuffle_rng);
              loss_sum += critic_update(i, shuffled, nets, dims, cfg.gamma, lr_e);
            } else {
              loss_sum += critic_update(i, batch, nets, dims, cfg.gamma, lr_e);
            }
            obj_sum += actor_update(i, batch, nets, dims, lr_e);
          }
          for (std::size_t i = 0; i < dims.agents; ++i) {
            soft_update(nets[i].actor_target.params(), nets[i].actor.params(), cfg.tau);
            soft_update(nets[i].critic_target->params(), nets[i].critic->params(), cfg.tau);
          }
          ++update_rounds;
        }
      }

      if (update_rounds > 0) {
        const double denom = static_cast<double>(update_rounds * dims.agents);
        last_loss = loss_sum / denom;
        last_obj = obj_sum / denom;
      }
      evalstat::MetricRow row;
      row.episode = e + 1;
      row.steps = global_step;
      row.mean_episode_reward = ep_return;
      row.critic_loss = last_loss;
      row.actor_obj = last_obj;
      row.wallclock_s = cfg.wallclock_in_metrics ? elapsed_s() : 0.0;
      metrics.push_back(row);

      if (std::find(ckpt_at.begin(), ckpt_at.end(), e + 1) != ckpt_at.end()) {
        const std::string name = checkpoint_name(e + 1);
        save_actor_checkpoint(dir / name, nets);
        manifest.checkpoints.push_back(name);
      }
      manifest.episodes_completed = e + 1;
      manifest.env_steps = global_step;
    }
  } catch (const Fault&) {
    // Fail fast on non-finite losses, but keep the evidence.
    save_actor_checkpoint(dir / "ckpt" / "abort.bin", nets);
    evalstat::write_metrics_csv(dir / manifest.metrics, metrics);
    throw;
  }

  manifest.wallclock_total_s = elapsed_s();
  evalstat::write_metrics_csv(dir / manifest.metrics, metrics);
  evalstat::export_run_curves(dir, metrics);
  config::write_config_file((dir / "config.resolved").string(), cfg);
  manifest.save(dir / "manifest.json");
  return TrainResult{std::move(manifest), dir};
}

}  // namespace picrl::learner
