#include "clipppo/rollout.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "clipppo/errors.hpp"

namespace clipppo::rollout {

void EpisodeStats::add(double episode_return) {
  last_.push_back(episode_return);
  if (last_.size() > 100) last_.pop_front();
  cumulative_ += episode_return;
  ++count_;
}

double EpisodeStats::mean_all() const {
  if (count_ == 0) return std::numeric_limits<double>::quiet_NaN();
  return cumulative_ / static_cast<double>(count_);
}

double EpisodeStats::mean_last100() const {
  if (last_.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double sum = std::accumulate(last_.begin(), last_.end(), 0.0);
  return sum / static_cast<double>(last_.size());
}

RolloutBatch collect(const nn::PolicyParams& params, envs::VecEnv& env, int steps, Rng& action_rng,
                     EpisodeStats& stats, std::vector<envs::EpisodeRecord>* episode_log,
                     double gamma) {
  if (steps < 1) throw UsageError("collect: need at least one step");
  const int n = env.size();
  const int obs_dim = env.spec().obs_dim;
  const bool continuous = params.continuous;
  const int rows = n * steps;

  RolloutBatch batch;
  batch.n_envs = n;
  batch.steps = steps;
  batch.continuous = continuous;
  batch.obs.resize(rows, obs_dim);
  if (continuous)
    batch.actions_c.resize(rows, params.action_dim);
  else
    batch.actions_d.resize(static_cast<std::size_t>(rows));
  batch.old_log_probs.resize(rows);
  batch.values.resize(rows);
  batch.rewards.resize(rows);
  batch.done_flags.assign(static_cast<std::size_t>(rows), 0);

  for (int t = 0; t < steps; ++t) {
    const Eigen::MatrixXd obs_t = env.obs();
    if (!obs_t.allFinite())
      throw TrainingError("collect: non-finite observation at step " + std::to_string(t));

    const nn::ActOut sampled = nn::act(params, obs_t, action_rng);
    if (!sampled.log_probs.allFinite() || !sampled.values.allFinite())
      throw TrainingError("collect: non-finite network output at step " + std::to_string(t));

    std::vector<envs::Action> actions(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (continuous)
        actions[static_cast<std::size_t>(i)] = Eigen::VectorXd(sampled.actions_c.row(i).transpose());
      else
        actions[static_cast<std::size_t>(i)] = sampled.actions_d[static_cast<std::size_t>(i)];
    }

    auto step_out = env.step(actions);

    for (int i = 0; i < n; ++i) {
      const int row = t * n + i;
      batch.obs.row(row) = obs_t.row(i);
      if (continuous)
        batch.actions_c.row(row) = sampled.actions_c.row(i);
      else
        batch.actions_d[static_cast<std::size_t>(row)] = sampled.actions_d[static_cast<std::size_t>(i)];
      batch.old_log_probs[row] = sampled.log_probs[i];
      batch.values[row] = sampled.values[i];

      double reward = step_out.rewards[i];
      const bool terminated = step_out.terminated[static_cast<std::size_t>(i)] != 0;
      const bool truncated = step_out.truncated[static_cast<std::size_t>(i)] != 0;
      if (truncated && !terminated) {
        // Time limits are not task failures: bootstrap through them.
        const Eigen::MatrixXd final_obs = step_out.final_obs.row(i);
        reward += gamma * params.value_net.forward(final_obs)(0, 0);
      }
      batch.rewards[row] = reward;
      batch.done_flags[static_cast<std::size_t>(row)] = (terminated || truncated) ? 1 : 0;
    }

    for (const auto& ep : env.drain_episodes()) {
      stats.add(ep.episode_return);
      if (episode_log != nullptr) episode_log->push_back(ep);
    }
  }

  batch.bootstrap_values = params.value_net.forward(env.obs()).col(0);
  return batch;
}

void compute_gae(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                 const std::vector<std::uint8_t>& done_flags, const Eigen::VectorXd& bootstrap_values,
                 int n_envs, double gamma, double gae_lambda, Eigen::VectorXd& advantages,
                 Eigen::VectorXd& returns) {
  if (gamma < 0.0 || gamma > 1.0 || gae_lambda < 0.0 || gae_lambda > 1.0)
    throw UsageError("compute_gae: gamma and lambda must lie in [0, 1]");
  const auto rows = rewards.size();
  if (rows % n_envs != 0) throw UsageError("compute_gae: rows not divisible by n_envs");
  const auto steps = rows / n_envs;

  advantages.resize(rows);
  returns.resize(rows);
  for (int i = 0; i < n_envs; ++i) {
    double running = 0.0;
    for (Eigen::Index t = steps - 1; t >= 0; --t) {
      const Eigen::Index row = t * n_envs + i;
      const double not_done = done_flags[static_cast<std::size_t>(row)] ? 0.0 : 1.0;
      const double next_value = (t == steps - 1) ? bootstrap_values[i] : values[row + n_envs];
      const double delta = rewards[row] + gamma * next_value * not_done - values[row];
      running = delta + gamma * gae_lambda * not_done * running;
      advantages[row] = running;
    }
  }
  returns = advantages + values;
}

void compute_gae(RolloutBatch& batch, double gamma, double gae_lambda) {
  compute_gae(batch.rewards, batch.values, batch.done_flags, batch.bootstrap_values, batch.n_envs,
              gamma, gae_lambda, batch.advantages, batch.returns);
}

std::vector<std::vector<int>> minibatches(int batch_size, int minibatch, Rng& rng) {
  if (minibatch < 1) throw UsageError("minibatches: minibatch size must be >= 1");
  if (minibatch > batch_size)
    throw UsageError("minibatches: minibatch " + std::to_string(minibatch) +
                     " exceeds batch size " + std::to_string(batch_size));

  std::vector<int> indices(static_cast<std::size_t>(batch_size));
  std::iota(indices.begin(), indices.end(), 0);
  // Fisher-Yates with our own generator so the shuffle is identical across
  // standard library implementations.
  for (int i = batch_size - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
  }

  std::vector<std::vector<int>> slices;
  for (int start = 0; start < batch_size; start += minibatch) {
    const int end = std::min(start + minibatch, batch_size);
    slices.emplace_back(indices.begin() + start, indices.begin() + end);
  }
  return slices;
}

}  // namespace clipppo::rollout
