#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "picrl/evaluate.hpp"
#include "picrl/stats.hpp"

namespace picrl::evalstat {

// One per-episode training metrics row.
struct MetricRow {
  std::uint64_t episode = 0;
  std::uint64_t steps = 0;
  double mean_episode_reward = 0.0;
  double critic_loss = 0.0;
  double actor_obj = 0.0;
  double wallclock_s = 0.0;
};

// metrics.csv schema: episode,steps,mean_episode_reward,critic_loss,actor_obj,wallclock_s
void write_metrics_csv(const std::filesystem::path& path, std::span<const MetricRow> rows);
std::vector<MetricRow> read_metrics_csv(const std::filesystem::path& path);

// Valid-window moving average: length-W windows over the series; a series
// shorter than the window collapses to its single overall mean.
std::vector<double> moving_average(std::span<const double> xs, std::size_t window);

// Gnuplot-friendly curve: "index raw trailing-mean" per line (trailing
// window of `window` points, expanding at the start).
void write_curve_dat(const std::filesystem::path& path, std::span<const double> series,
                     std::size_t window = 100);

// Single-column curve CSVs (episode,value).
void write_curve_csv(const std::filesystem::path& path, const std::string& value_header,
                     std::span<const double> series);
std::vector<double> read_curve_csv(const std::filesystem::path& path);

// Evaluation returns: checkpoint,episode,return.
void write_returns_csv(const std::filesystem::path& path, const EvalLog& log);
EvalLog read_returns_csv(const std::filesystem::path& path);

struct StatRow {
  std::string label;  // "abs." or "final"
  TTestResult ttest;
  BootstrapResult boot;
  std::size_t n_a = 0, n_b = 0;
};

void write_stats_csv(const std::filesystem::path& path, std::span<const StatRow> rows);

// rewards.csv/.dat and qloss.csv/.dat for one training run.
void export_run_curves(const std::filesystem::path& dir, std::span<const MetricRow> rows);

}  // namespace picrl::evalstat
