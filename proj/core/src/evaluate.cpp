#include "picrl/evaluate.hpp"

#include <cmath>

#include "picrl/error.hpp"
#include "picrl/physics.hpp"

namespace picrl::evalstat {

namespace {

template <typename ActionFn>
std::vector<double> rollout_episodes(const scenarios::TaskSpec& spec, std::size_t episodes,
                                     std::uint64_t seed, ActionFn&& action_for) {
  std::vector<double> returns;
  returns.reserve(episodes);
  const Rng root(seed);
  for (std::size_t e = 0; e < episodes; ++e) {
    Rng rng = root.substream(e);
    engine::World world = scenarios::spawn(spec, rng);
    numerics::Matrix obs = scenarios::observe_all(world, spec);
    double ep_return = 0.0;
    for (std::size_t t = 0; t < spec.episode_length; ++t) {
      engine::JointAction actions(world.num_actors);
      for (std::size_t i = 0; i < spec.num_agents; ++i) {
        const std::vector<double> a =
            action_for(i, std::span<const double>(obs.row_ptr(i), spec.obs_dim()), rng);
        actions.set_row(i, a.data());
      }
      scenarios::fill_prey_actions(world, spec, actions);
      engine::step(world, actions);
      obs = scenarios::observe_all(world, spec);
      ep_return += scenarios::global_reward(world, spec)[0];
    }
    returns.push_back(ep_return);
  }
  return returns;
}

}  // namespace

std::vector<double> evaluate(std::vector<learner::Actor*> actors, const scenarios::TaskSpec& spec,
                             std::size_t episodes, std::uint64_t seed) {
  if (actors.size() != spec.num_agents)
    throw DimensionError("evaluate: " + std::to_string(actors.size()) + " policies for " +
                         std::to_string(spec.num_agents) + " agents");
  for (const learner::Actor* a : actors)
    if (a->obs_dim() != spec.obs_dim())
      throw DimensionError("evaluate: actor expects obs dim " + std::to_string(a->obs_dim()) +
                           ", task provides " + std::to_string(spec.obs_dim()));
  return rollout_episodes(spec, episodes, seed,
                          [&](std::size_t i, std::span<const double> obs, Rng&) {
                            return actors[i]->act(obs);
                          });
}

std::vector<double> evaluate_random_policy(const scenarios::TaskSpec& spec, std::size_t episodes,
                                           std::uint64_t seed) {
  return rollout_episodes(spec, episodes, seed,
                          [&](std::size_t, std::span<const double>, Rng& rng) {
                            std::vector<double> a(scenarios::kActionDim);
                            for (double& v : a) v = rng.uniform();
                            return a;
                          });
}

double final_metric(const EvalLog& log) {
  if (log.checkpoint_returns.empty()) throw ConfigError("final_metric: empty evaluation log");
  const std::size_t n = log.checkpoint_returns.size();
  const std::size_t first = n > 10 ? n - 10 : 0;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t c = first; c < n; ++c)
    for (double r : log.checkpoint_returns[c]) {
      if (!std::isfinite(r)) throw Fault("final_metric: non-finite return");
      sum += r;
      ++count;
    }
  if (count == 0) throw ConfigError("final_metric: no episode returns");
  return sum / static_cast<double>(count);
}

double absolute_metric(const EvalLog& log) {
  if (log.checkpoint_returns.empty()) throw ConfigError("absolute_metric: empty evaluation log");
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& returns : log.checkpoint_returns) {
    if (returns.empty()) continue;
    double sum = 0.0;
    for (double r : returns) sum += r;
    best = std::max(best, sum / static_cast<double>(returns.size()));
    any = true;
  }
  if (!any) throw ConfigError("absolute_metric: no episode returns");
  return best;
}

}  // namespace picrl::evalstat
