#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "picrl/config.hpp"

namespace picrl::io {

// Everything needed to reproduce or evaluate one training run.
struct RunManifest {
  std::string version;
  config::TrainConfig config;
  std::vector<std::string> checkpoints;  // relative to the run directory
  std::string metrics = "metrics.csv";
  std::uint64_t episodes_completed = 0;
  std::uint64_t env_steps = 0;
  double wallclock_total_s = 0.0;

  void save(const std::filesystem::path& path) const;
  static RunManifest load(const std::filesystem::path& path);
};

}  // namespace picrl::io
