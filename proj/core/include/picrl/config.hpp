#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "picrl/critic.hpp"
#include "picrl/task.hpp"

namespace picrl::config {

// Resolved training configuration. Numeric defaults are the published
// hyperparameters; episodes defaults to the desk-scale run length (pass
// --episodes 60000 for a full-scale run).
struct TrainConfig {
  scenarios::Task task = scenarios::Task::kCoopNav;
  std::size_t agents = 3;
  critics::CriticKind critic = critics::CriticKind::kPic;
  critics::GraphSpec graph{};
  critics::PoolMode pool = critics::PoolMode::kMax;
  std::uint64_t episodes = 5000;
  std::uint64_t episode_length = 0;  // 0: task default (25 or 50)
  std::uint64_t seed = 0;
  double gamma = 0.95;
  std::size_t batch = 1024;
  std::size_t buffer = 1'000'000;
  double lr = 0.01;
  double tau = 0.01;
  std::uint64_t update_interval = 100;
  double noise_start = 0.3;
  std::size_t hidden = 128;
  std::string out = "run";
  // "measured" writes elapsed seconds into the metrics wallclock column;
  // "zero" pins it to 0 so two identical runs produce identical bytes.
  bool wallclock_in_metrics = true;
};

// Parses command-line style arguments, e.g. {"--task", "coop_nav",
// "--episodes", "100"}. A config file of key=value lines is read via
// --config FILE; explicit flags override file values, file values override
// defaults. Unknown keys and out-of-range values throw ConfigError naming
// the key, the value and the legal range.
TrainConfig parse_train_config(const std::vector<std::string>& args);

// The config as ordered key=value pairs; feeding them back through
// parse_train_config reproduces the config exactly.
std::vector<std::pair<std::string, std::string>> config_key_values(const TrainConfig& cfg);

// Serializes to a --config-loadable file.
void write_config_file(const std::string& path, const TrainConfig& cfg);

}  // namespace picrl::config
