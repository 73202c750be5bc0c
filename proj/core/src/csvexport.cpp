#include "picrl/csvexport.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "picrl/error.hpp"

namespace picrl::evalstat {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("csv: cannot write " + path.string());
  return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("csv: cannot open " + path.string());
  return f;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("csv: bad number '" + s + "' in " + path.string());
  }
}

}  // namespace

void write_metrics_csv(const std::filesystem::path& path, std::span<const MetricRow> rows) {
  std::ofstream f = open_out(path);
  f << "episode,steps,mean_episode_reward,critic_loss,actor_obj,wallclock_s\n";
  for (const MetricRow& r : rows)
    f << r.episode << ',' << r.steps << ',' << fmt(r.mean_episode_reward) << ','
      << fmt(r.critic_loss) << ',' << fmt(r.actor_obj) << ',' << fmt(r.wallclock_s) << '\n';
}

std::vector<MetricRow> read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream f = open_in(path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("csv: empty file " + path.string());
  std::vector<MetricRow> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 6) throw IoError("csv: bad metrics row in " + path.string());
    MetricRow r;
    r.episode = static_cast<std::uint64_t>(parse_double(fields[0], path));
    r.steps = static_cast<std::uint64_t>(parse_double(fields[1], path));
    r.mean_episode_reward = parse_double(fields[2], path);
    r.critic_loss = parse_double(fields[3], path);
    r.actor_obj = parse_double(fields[4], path);
    r.wallclock_s = parse_double(fields[5], path);
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> moving_average(std::span<const double> xs, std::size_t window) {
  if (window < 1) throw ConfigError("moving_average: window must be positive");
  if (xs.empty()) return {};
  if (xs.size() <= window) {
    double s = 0.0;
    for (double v : xs) s += v;
    return {s / static_cast<double>(xs.size())};
  }
  std::vector<double> out;
  out.reserve(xs.size() - window + 1);
  double s = 0.0;
  for (std::size_t i = 0; i < window; ++i) s += xs[i];
  out.push_back(s / static_cast<double>(window));
  for (std::size_t i = window; i < xs.size(); ++i) {
    s += xs[i] - xs[i - window];
    out.push_back(s / static_cast<double>(window));
  }
  return out;
}

void write_curve_dat(const std::filesystem::path& path, std::span<const double> series,
                     std::size_t window) {
  std::ofstream f = open_out(path);
  f << "# index raw smoothed(window=" << window << ")\n";
  double s = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    s += series[i];
    if (i >= window) s -= series[i - window];
    const std::size_t n = std::min(i + 1, window);
    f << i << ' ' << fmt(series[i]) << ' ' << fmt(s / static_cast<double>(n)) << '\n';
  }
}

void write_curve_csv(const std::filesystem::path& path, const std::string& value_header,
                     std::span<const double> series) {
  std::ofstream f = open_out(path);
  f << "episode," << value_header << "\n";
  for (std::size_t i = 0; i < series.size(); ++i) f << i << ',' << fmt(series[i]) << '\n';
}

std::vector<double> read_curve_csv(const std::filesystem::path& path) {
  std::ifstream f = open_in(path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("csv: empty file " + path.string());
  std::vector<double> out;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) throw IoError("csv: bad curve row in " + path.string());
    out.push_back(parse_double(fields[1], path));
  }
  return out;
}

void write_returns_csv(const std::filesystem::path& path, const EvalLog& log) {
  std::ofstream f = open_out(path);
  f << "checkpoint,episode,return\n";
  for (std::size_t c = 0; c < log.checkpoint_returns.size(); ++c)
    for (std::size_t e = 0; e < log.checkpoint_returns[c].size(); ++e)
      f << c << ',' << e << ',' << fmt(log.checkpoint_returns[c][e]) << '\n';
}

EvalLog read_returns_csv(const std::filesystem::path& path) {
  std::ifstream f = open_in(path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("csv: empty file " + path.string());
  EvalLog log;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) throw IoError("csv: bad returns row in " + path.string());
    const std::size_t c = static_cast<std::size_t>(parse_double(fields[0], path));
    if (c >= log.checkpoint_returns.size()) log.checkpoint_returns.resize(c + 1);
    log.checkpoint_returns[c].push_back(parse_double(fields[2], path));
  }
  return log;
}

void write_stats_csv(const std::filesystem::path& path, std::span<const StatRow> rows) {
  std::ofstream f = open_out(path);
  f << "metric,t_stat,p_value,dof,mean_diff,ci_lo,ci_hi,n_a,n_b\n";
  for (const StatRow& r : rows)
    f << r.label << ',' << fmt(r.ttest.t) << ',' << fmt(r.ttest.p) << ',' << fmt(r.ttest.dof)
      << ',' << fmt(r.boot.mean_diff) << ',' << fmt(r.boot.lo) << ',' << fmt(r.boot.hi) << ','
      << r.n_a << ',' << r.n_b << '\n';
}

void export_run_curves(const std::filesystem::path& dir, std::span<const MetricRow> rows) {
  std::vector<double> rewards, qloss;
  rewards.reserve(rows.size());
  qloss.reserve(rows.size());
  for (const MetricRow& r : rows) {
    rewards.push_back(r.mean_episode_reward);
    qloss.push_back(r.critic_loss);
  }
  write_curve_csv(dir / "rewards.csv", "mean_episode_reward", rewards);
  write_curve_csv(dir / "qloss.csv", "critic_loss", qloss);
  write_curve_dat(dir / "rewards.dat", rewards);
  write_curve_dat(dir / "qloss.dat", qloss);
}

}  // namespace picrl::evalstat
