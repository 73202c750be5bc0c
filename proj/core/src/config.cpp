#include "picrl/config.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>

#include "picrl/error.hpp"

namespace picrl::config {

namespace {

// String-typed mirror of TrainConfig bound to CLI11; validated afterwards so
// range errors name key, value and legal range uniformly.
struct RawConfig {
  std::string task = "coop_nav";
  std::uint64_t agents = 3;
  std::string critic = "pic";
  std::string graph = "full";
  std::string pool = "max";
  std::uint64_t episodes = 5000;
  std::uint64_t episode_length = 0;
  std::uint64_t seed = 0;
  double gamma = 0.95;
  std::uint64_t batch = 1024;
  std::uint64_t buffer = 1'000'000;
  double lr = 0.01;
  double tau = 0.01;
  std::uint64_t update_interval = 100;
  double noise_start = 0.3;
  std::uint64_t hidden = 128;
  std::string out = "run";
  std::string metrics_wallclock = "measured";
};

void attach_options(CLI::App& app, RawConfig& raw) {
  app.add_option("--task", raw.task, "task name");
  app.add_option("--agents", raw.agents, "number of learning agents");
  app.add_option("--critic", raw.critic, "critic kind: mlp, mlp_aug or pic");
  app.add_option("--graph", raw.graph, "critic graph: full or knn:K");
  app.add_option("--pool", raw.pool, "PIC pooling: max or avg");
  app.add_option("--episodes", raw.episodes, "training episodes");
  app.add_option("--episode_length", raw.episode_length, "steps per episode (0: task default)");
  app.add_option("--seed", raw.seed, "master random seed");
  app.add_option("--gamma", raw.gamma, "discount factor");
  app.add_option("--batch", raw.batch, "minibatch size");
  app.add_option("--buffer", raw.buffer, "replay capacity");
  app.add_option("--lr", raw.lr, "initial Adam learning rate (annealed to zero)");
  app.add_option("--tau", raw.tau, "target soft-update rate");
  app.add_option("--update_interval", raw.update_interval, "environment steps between updates");
  app.add_option("--noise_start", raw.noise_start, "initial exploration noise scale");
  app.add_option("--hidden", raw.hidden, "hidden units per layer");
  app.add_option("--out", raw.out, "output directory");
  app.add_option("--metrics_wallclock", raw.metrics_wallclock,
                 "wallclock column mode: measured or zero");
  app.set_config("--config", "", "key=value configuration file");
  app.allow_config_extras(false);
}

[[noreturn]] void range_error(const std::string& key, const std::string& value,
                              const std::string& legal) {
  throw ConfigError("config: " + key + "=" + value + " out of range (" + legal + ")");
}

template <typename T>
std::string str(T v) {
  return std::to_string(v);
}

std::string str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TrainConfig validate(const RawConfig& raw) {
  TrainConfig cfg;
  cfg.task = scenarios::task_from_name(raw.task);
  cfg.critic = critics::critic_kind_from_name(raw.critic);
  cfg.graph = critics::parse_graph_spec(raw.graph);
  cfg.pool = critics::pool_mode_from_name(raw.pool);

  if (raw.agents < 2) range_error("agents", str(raw.agents), "needs at least 2");
  if (raw.gamma <= 0.0 || raw.gamma > 1.0) range_error("gamma", str(raw.gamma), "0 < gamma <= 1");
  if (raw.batch < 1) range_error("batch", str(raw.batch), "needs at least 1");
  if (raw.buffer < raw.batch)
    range_error("buffer", str(raw.buffer), "must hold at least one batch of " + str(raw.batch));
  if (raw.lr < 0.0) range_error("lr", str(raw.lr), "lr >= 0");
  if (raw.tau < 0.0 || raw.tau > 1.0) range_error("tau", str(raw.tau), "0 <= tau <= 1");
  if (raw.update_interval < 1) range_error("update_interval", str(raw.update_interval), ">= 1");
  if (raw.noise_start < 0.0) range_error("noise_start", str(raw.noise_start), ">= 0");
  if (raw.hidden < 1) range_error("hidden", str(raw.hidden), ">= 1");
  if (cfg.graph.mode == critics::GraphMode::kKnn && cfg.graph.k >= raw.agents)
    range_error("graph", raw.graph, "knn K must be below the agent count " + str(raw.agents));
  if (raw.metrics_wallclock != "measured" && raw.metrics_wallclock != "zero")
    range_error("metrics_wallclock", raw.metrics_wallclock, "measured or zero");

  cfg.agents = raw.agents;
  cfg.episodes = raw.episodes;
  cfg.episode_length = raw.episode_length;
  cfg.seed = raw.seed;
  cfg.gamma = raw.gamma;
  cfg.batch = raw.batch;
  cfg.buffer = raw.buffer;
  cfg.lr = raw.lr;
  cfg.tau = raw.tau;
  cfg.update_interval = raw.update_interval;
  cfg.noise_start = raw.noise_start;
  cfg.hidden = raw.hidden;
  cfg.out = raw.out;
  cfg.wallclock_in_metrics = raw.metrics_wallclock == "measured";
  return cfg;
}

}  // namespace

TrainConfig parse_train_config(const std::vector<std::string>& args) {
  CLI::App app{"picrl training configuration"};
  RawConfig raw;
  attach_options(app, raw);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return validate(raw);
}

std::vector<std::pair<std::string, std::string>> config_key_values(const TrainConfig& cfg) {
  return {
      {"task", scenarios::task_name(cfg.task)},
      {"agents", str(cfg.agents)},
      {"critic", critics::critic_kind_name(cfg.critic)},
      {"graph", cfg.graph.to_string()},
      {"pool", critics::pool_mode_name(cfg.pool)},
      {"episodes", str(cfg.episodes)},
      {"episode_length", str(cfg.episode_length)},
      {"seed", str(cfg.seed)},
      {"gamma", str(cfg.gamma)},
      {"batch", str(cfg.batch)},
      {"buffer", str(cfg.buffer)},
      {"lr", str(cfg.lr)},
      {"tau", str(cfg.tau)},
      {"update_interval", str(cfg.update_interval)},
      {"noise_start", str(cfg.noise_start)},
      {"hidden", str(cfg.hidden)},
      {"out", cfg.out},
      {"metrics_wallclock", cfg.wallclock_in_metrics ? "measured" : "zero"},
  };
}

void write_config_file(const std::string& path, const TrainConfig& cfg) {
  std::ofstream f(path);
  if (!f) throw IoError("config: cannot write " + path);
  for (const auto& [k, v] : config_key_values(cfg)) f << k << "=" << v << "\n";
}

}  // namespace picrl::config
