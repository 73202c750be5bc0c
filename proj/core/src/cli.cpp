#include "picrl/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "picrl/checkpoint.hpp"
#include "picrl/csvexport.hpp"
#include "picrl/error.hpp"
#include "picrl/physics.hpp"
#include "picrl/train.hpp"
#include "picrl/version.hpp"

namespace picrl::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

int cmd_train(const std::vector<std::string>& rest, std::ostream& out) {
  const config::TrainConfig cfg = config::parse_train_config(rest);
  learner::TrainResult result = learner::train(cfg);
  out << "trained " << result.manifest.episodes_completed << " episodes ("
      << result.manifest.env_steps << " env steps) in "
      << num(result.manifest.wallclock_total_s, "%.1f") << "s\n"
      << "run directory: " << result.run_dir.string() << "\n"
      << "checkpoints: " << result.manifest.checkpoints.size() << "\n";
  return 0;
}

int cmd_evaluate(const std::string& run, std::size_t episodes, std::uint64_t seed,
                 std::string out_dir, std::ostream& out) {
  const fs::path run_dir(run);
  const io::RunManifest manifest = io::RunManifest::load(run_dir / "manifest.json");
  const scenarios::TaskSpec spec = learner::task_for(manifest.config);
  std::vector<learner::Actor> actors = learner::build_actors(manifest.config, spec);

  std::vector<std::pair<std::string, numerics::ParamSet*>> sets;
  std::vector<learner::Actor*> ptrs;
  for (std::size_t i = 0; i < actors.size(); ++i) {
    sets.emplace_back("agent" + std::to_string(i) + "/actor", &actors[i].params());
    ptrs.push_back(&actors[i]);
  }

  evalstat::EvalLog log;
  for (const std::string& name : manifest.checkpoints) {
    io::load_into(run_dir / name, sets);
    log.checkpoint_returns.push_back(evalstat::evaluate(ptrs, spec, episodes, seed));
  }

  if (out_dir.empty()) out_dir = (run_dir / "eval").string();
  fs::create_directories(out_dir);
  evalstat::write_returns_csv(fs::path(out_dir) / "returns.csv", log);
  out << "evaluated " << log.checkpoint_returns.size() << " checkpoints x " << episodes
      << " episodes -> " << (fs::path(out_dir) / "returns.csv").string() << "\n";
  if (!log.checkpoint_returns.empty() && episodes > 0) {
    out << "final metric:    " << num(evalstat::final_metric(log)) << "\n"
        << "absolute metric: " << num(evalstat::absolute_metric(log)) << "\n";
  }
  return 0;
}

// Every returns.csv below `dir` is one run; its final/absolute metrics are
// one sample each.
void collect_metrics(const std::string& dir, std::vector<double>& finals,
                     std::vector<double>& absolutes) {
  std::vector<fs::path> files;
  if (!fs::exists(dir)) throw IoError("compare: no such directory " + dir);
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().filename() == "returns.csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    const evalstat::EvalLog log = evalstat::read_returns_csv(f);
    finals.push_back(evalstat::final_metric(log));
    absolutes.push_back(evalstat::absolute_metric(log));
  }
  if (files.empty()) throw IoError("compare: no returns.csv under " + dir);
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b, std::size_t n_boot,
                double level, std::uint64_t seed, bool welch, const std::string& out_dir,
                std::ostream& out) {
  std::vector<double> final_a, abs_a, final_b, abs_b;
  collect_metrics(dir_a, final_a, abs_a);
  collect_metrics(dir_b, final_b, abs_b);

  Rng rng(seed);
  std::vector<evalstat::StatRow> rows;
  const struct {
    const char* label;
    const std::vector<double>*a, *b;
  } pairs[] = {{"abs.", &abs_a, &abs_b}, {"final", &final_a, &final_b}};
  for (std::size_t k = 0; k < 2; ++k) {
    evalstat::StatRow row;
    row.label = pairs[k].label;
    row.ttest = evalstat::ttest_2samp(*pairs[k].a, *pairs[k].b, !welch);
    Rng sub = rng.substream(k);
    row.boot = evalstat::bootstrap_ci(*pairs[k].a, *pairs[k].b, n_boot, level, sub);
    row.n_a = pairs[k].a->size();
    row.n_b = pairs[k].b->size();
    rows.push_back(row);
  }

  out << "two-sample comparison: A=" << dir_a << " (n=" << rows[0].n_a << ") vs B=" << dir_b
      << " (n=" << rows[0].n_b << "), mean difference A-B\n";
  out << "        t-test              Boostrap C.I.\n";
  out << "        t-stat. (p-value)   mean (C.I.)\n";
  for (const evalstat::StatRow& r : rows)
    out << r.label << (r.label.size() < 5 ? "\t" : "") << "    " << num(r.ttest.t, "%.4g") << " ("
        << num(r.ttest.p, "%.2g") << ")       " << num(r.boot.mean_diff, "%.6g") << " ("
        << num(r.boot.lo, "%.6g") << ", " << num(r.boot.hi, "%.6g") << ")\n";

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    evalstat::write_stats_csv(fs::path(out_dir) / "stats.csv", rows);
    out << "wrote " << (fs::path(out_dir) / "stats.csv").string() << "\n";
  }
  return 0;
}

int cmd_bench(std::size_t agents, std::size_t steps, std::size_t worlds, std::uint64_t seed,
              std::ostream& out) {
  const scenarios::TaskSpec spec = scenarios::TaskSpec::make(scenarios::Task::kCoopNav, agents);
  const Rng root(seed);

  // Identical seeded worlds and action streams through both paths.
  auto run_path = [&](bool oracle) {
    double checksum = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t w = 0; w < worlds; ++w) {
      Rng rng = root.substream(w);
      engine::World world = scenarios::spawn(spec, rng);
      engine::JointAction actions(world.num_actors);
      for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t i = 0; i < world.num_actors; ++i)
          for (std::size_t c = 1; c < engine::JointAction::kChannels; ++c)
            actions(i, c) = rng.uniform();
        if (oracle)
          engine::step_with_oracle_collisions(world, actions);
        else
          engine::step(world, actions);
      }
      checksum += world.pos_x[0];
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return std::pair<double, double>(static_cast<double>(worlds * steps) / secs, checksum);
  };

  const auto [fast_sps, fast_sum] = run_path(false);
  const auto [slow_sps, slow_sum] = run_path(true);

  // Equivalence spot check on fresh worlds.
  double max_delta = 0.0;
  for (std::size_t w = 0; w < std::min<std::size_t>(worlds, 5); ++w) {
    Rng rng = root.substream(1000 + w);
    engine::World world = scenarios::spawn(spec, rng);
    max_delta = std::max(max_delta, numerics::max_abs_diff(engine::collision_forces(world),
                                                           engine::reference_collision_oracle(world)));
  }

  out << "engine step throughput, N=" << agents << " (" << worlds << " worlds x " << steps
      << " steps)\n"
      << "  vectorized:  " << num(fast_sps, "%.1f") << " steps/s\n"
      << "  oracle loop: " << num(slow_sps, "%.1f") << " steps/s\n"
      << "  speedup:     " << num(fast_sps / slow_sps, "%.2f") << "x\n"
      << "  max |vectorized - oracle| force delta: " << num(max_delta, "%.3g") << "\n"
      << "  trajectory checksum delta: " << num(std::abs(fast_sum - slow_sum), "%.3g") << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"multi-agent particle RL with permutation invariant critics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CLI::App* train = app.add_subcommand("train", "train MADDPG policies");
  train->allow_extras();

  std::string eval_run, eval_out;
  std::size_t eval_episodes = 1000;
  std::uint64_t eval_seed = 12345;
  CLI::App* evaluate = app.add_subcommand("evaluate", "roll out saved checkpoints");
  evaluate->add_option("--run", eval_run, "training run directory")->required();
  evaluate->add_option("--episodes", eval_episodes, "episodes per checkpoint");
  evaluate->add_option("--seed", eval_seed, "evaluation seed");
  evaluate->add_option("--out", eval_out, "output directory (default <run>/eval)");

  std::string cmp_a, cmp_b, cmp_out;
  std::size_t cmp_boot = 10000;
  double cmp_level = 0.95;
  std::uint64_t cmp_seed = 9999;
  bool cmp_welch = false;
  CLI::App* compare = app.add_subcommand("compare", "t-test and bootstrap CI over two run sets");
  compare->add_option("--a", cmp_a, "directory of runs (side A)")->required();
  compare->add_option("--b", cmp_b, "directory of runs (side B)")->required();
  compare->add_option("--n_boot", cmp_boot, "bootstrap resamples");
  compare->add_option("--level", cmp_level, "confidence level");
  compare->add_option("--seed", cmp_seed, "bootstrap seed");
  compare->add_flag("--welch", cmp_welch, "Welch t-test instead of pooled variance");
  compare->add_option("--out", cmp_out, "directory for stats.csv");

  std::size_t bench_agents = 100, bench_steps = 100, bench_worlds = 10;
  std::uint64_t bench_seed = 7;
  CLI::App* bench = app.add_subcommand("bench", "vectorized vs reference engine throughput");
  bench->add_option("--agents", bench_agents, "agent count");
  bench->add_option("--steps", bench_steps, "steps per world");
  bench->add_option("--worlds", bench_worlds, "independent worlds");
  bench->add_option("--seed", bench_seed, "world seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
    if (train->parsed()) return cmd_train(train->remaining(), out);
    if (evaluate->parsed()) return cmd_evaluate(eval_run, eval_episodes, eval_seed, eval_out, out);
    if (compare->parsed())
      return cmd_compare(cmp_a, cmp_b, cmp_boot, cmp_level, cmp_seed, cmp_welch, cmp_out, out);
    if (bench->parsed()) return cmd_bench(bench_agents, bench_steps, bench_worlds, bench_seed, out);
    err << "picrl: no subcommand\n";
    return 2;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "picrl: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "picrl: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "picrl: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace picrl::cli
