#include "picrl/manifest.hpp"

#include <fstream>
#include <json.hpp>

#include "picrl/error.hpp"
#include "picrl/version.hpp"

namespace picrl::io {

void RunManifest::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["version"] = version.empty() ? kVersion : version;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : config::config_key_values(config)) cfg[k] = v;
  j["config"] = cfg;
  j["checkpoints"] = checkpoints;
  j["metrics"] = metrics;
  j["episodes_completed"] = episodes_completed;
  j["env_steps"] = env_steps;
  j["wallclock_total_s"] = wallclock_total_s;
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("manifest: cannot write " + path.string());
  f << j.dump(2) << "\n";
}

RunManifest RunManifest::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("manifest: cannot open " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("manifest: bad JSON in " + path.string() + ": " + e.what());
  }
  RunManifest m;
  try {
    m.version = j.at("version").get<std::string>();
    std::vector<std::string> args;
    for (const auto& [k, v] : j.at("config").items()) {
      args.push_back("--" + k);
      args.push_back(v.get<std::string>());
    }
    m.config = config::parse_train_config(args);
    m.checkpoints = j.at("checkpoints").get<std::vector<std::string>>();
    m.metrics = j.at("metrics").get<std::string>();
    m.episodes_completed = j.at("episodes_completed").get<std::uint64_t>();
    m.env_steps = j.at("env_steps").get<std::uint64_t>();
    m.wallclock_total_s = j.at("wallclock_total_s").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("manifest: missing field in " + path.string() + ": " + e.what());
  }
  return m;
}

}  // namespace picrl::io
