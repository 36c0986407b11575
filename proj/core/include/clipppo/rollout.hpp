#ifndef CLIPPPO_ROLLOUT_HPP_
#define CLIPPPO_ROLLOUT_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <deque>
#include <vector>

#include "clipppo/policy.hpp"
#include "clipppo/rng.hpp"
#include "clipppo/vec_env.hpp"

namespace clipppo::rollout {

// N*T on-policy transitions collected under frozen parameters. Rows are
// step-major: row index = t * n_envs + slot. old_log_probs are exactly the
// log-probs of the sampling policy at collection time.
struct RolloutBatch {
  int n_envs = 0;
  int steps = 0;
  bool continuous = false;

  Eigen::MatrixXd obs;             // (N*T) x obs_dim
  std::vector<int> actions_d;      // discrete actions
  Eigen::MatrixXd actions_c;       // continuous actions, (N*T) x action_dim
  Eigen::VectorXd old_log_probs;
  Eigen::VectorXd values;
  Eigen::VectorXd rewards;
  std::vector<std::uint8_t> done_flags;
  Eigen::VectorXd bootstrap_values;  // per env: V of the obs after the last step

  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;

  int rows() const { return n_envs * steps; }
};

// Completed-episode return statistics: ring buffer of the most recent 100
// returns plus the cumulative sum and count over the whole run.
class EpisodeStats {
 public:
  void add(double episode_return);

  std::int64_t count() const { return count_; }
  // Mean over every completed episode; NaN before the first completion.
  double mean_all() const;
  // Mean over the last (up to) 100 completed episodes; NaN before the first.
  double mean_last100() const;

 private:
  std::deque<double> last_;
  double cumulative_ = 0.0;
  std::int64_t count_ = 0;
};

// Run the policy in the vector env for `steps` timesteps. Finished episodes
// go to `stats` and, when non-null, are appended to `episode_log`. When an
// episode ends by time limit (truncated, not terminated) the recorded
// reward is bootstrapped with gamma * V(final observation); on true
// termination the bootstrap is zero.
RolloutBatch collect(const nn::PolicyParams& params, envs::VecEnv& env, int steps, Rng& action_rng,
                     EpisodeStats& stats, std::vector<envs::EpisodeRecord>* episode_log,
                     double gamma);

// GAE over step-major arrays with `n_envs` interleaved streams:
//   delta_t = r_t + gamma * V(s_{t+1}) * (1 - done_t) - V(s_t)
//   A_t     = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}
// computed backward per stream; returns = advantages + values.
void compute_gae(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                 const std::vector<std::uint8_t>& done_flags, const Eigen::VectorXd& bootstrap_values,
                 int n_envs, double gamma, double gae_lambda, Eigen::VectorXd& advantages,
                 Eigen::VectorXd& returns);

void compute_gae(RolloutBatch& batch, double gamma, double gae_lambda);

// One epoch of shuffled minibatch index slices covering every index exactly
// once; the last slice is kept when `minibatch` does not divide
// `batch_size`. minibatch > batch_size is a usage error.
std::vector<std::vector<int>> minibatches(int batch_size, int minibatch, Rng& rng);

}  // namespace clipppo::rollout

#endif  // CLIPPPO_ROLLOUT_HPP_
