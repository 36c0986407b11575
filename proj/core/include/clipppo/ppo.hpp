#ifndef CLIPPPO_PPO_HPP_
#define CLIPPPO_PPO_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "clipppo/adam.hpp"
#include "clipppo/policy.hpp"
#include "clipppo/rollout.hpp"
#include "clipppo/schedules.hpp"
#include "clipppo/vec_env.hpp"

namespace clipppo::ppo {

// Telemetry of one loss evaluation. Sign convention: total is minimized,
//   total = -surrogate + value_coef * value_loss - entropy_coef * entropy.
struct LossReport {
  double surrogate = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double total = 0.0;
  double clip_fraction = 0.0;  // share of samples with |r - 1| > eps
  double approx_kl = 0.0;      // mean(old_log_prob - new_log_prob)
};

struct PpoConfig {
  int epochs = 10;                 // K
  int minibatch = 64;              // M
  double value_coef = 0.5;         // c1
  double entropy_coef = 0.0;       // c2
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double learning_rate = 3e-4;
  double grad_norm_cap = 0.5;      // global L2 cap applied before Adam; <= 0 disables
  int rollout_len = 256;           // T per env
  int n_envs = 8;                  // N
  std::int64_t total_timesteps = 100000;
  schedules::ClipSchedule schedule;
  std::uint64_t seed = 1;
  bool normalize_advantages = true;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-5;

  std::int64_t batch_size() const { return static_cast<std::int64_t>(n_envs) * rollout_len; }
};

void validate(const PpoConfig& config);

// Per-iteration telemetry row; field means are over all K * ceil(NT/M)
// minibatch evaluations of the iteration.
struct MetricsRow {
  int iteration = 0;
  std::int64_t timesteps = 0;
  double epsilon = 0.0;
  double clip_fraction = 0.0;
  double surrogate_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double mean_ep_return_last100 = 0.0;
  std::int64_t episodes_completed = 0;
  double grad_norm = 0.0;  // mean pre-clip global gradient norm
  double wall_ms = 0.0;
};

// One minibatch worth of training data, gathered by index from a batch.
struct BatchSlice {
  Eigen::MatrixXd obs;
  std::vector<int> actions_d;
  Eigen::MatrixXd actions_c;
  Eigen::VectorXd old_log_probs;
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;
  bool continuous = false;
};

BatchSlice gather(const rollout::RolloutBatch& batch, const std::vector<int>& indices);

// In-place per-minibatch advantage normalization: (a - mean) / (std + 1e-8)
// with the unbiased standard deviation.
void normalize_advantages(Eigen::VectorXd& advantages);

// r_t = exp(new - old), elementwise. Non-finite results are training errors.
Eigen::VectorXd ratio(const Eigen::VectorXd& new_log_probs, const Eigen::VectorXd& old_log_probs);

// Mean over samples of min(r * A, clip(r, 1-eps, 1+eps) * A). To be
// maximized. On ties the min selects the unclipped branch, which is also
// the documented subgradient choice.
double clipped_surrogate(const Eigen::VectorXd& r, const Eigen::VectorXd& advantages, double eps);

// Fraction of samples with |r - 1| strictly greater than eps.
double clip_fraction(const Eigen::VectorXd& r, double eps);

// Combined loss of one slice under the current parameters. Advantages in
// the slice are used as given (normalize beforehand if configured).
LossReport total_loss(const nn::PolicyParams& params, const BatchSlice& slice, double eps,
                      double value_coef, double entropy_coef);

// Same forward computation plus exact reverse-mode gradients, accumulated
// into `grads` (zeroed here).
LossReport loss_and_grads(const nn::PolicyParams& params, const BatchSlice& slice, double eps,
                          double value_coef, double entropy_coef, nn::Grads& grads);

// Called after every minibatch update with (report, epoch, minibatch index).
using MinibatchHook = std::function<void(const LossReport&, int, int)>;

// Owns the algorithm state of one training run: parameters, optimizer
// moments, rng streams and episode statistics. One iteration = collect
// N*T steps under frozen parameters, evaluate the clipping range once,
// then K epochs of shuffled minibatch Adam updates.
class Trainer {
 public:
  Trainer(const PpoConfig& config, envs::VecEnv& env);

  MetricsRow train_iteration();

  const PpoConfig& config() const { return config_; }
  const nn::PolicyParams& params() const { return params_; }
  nn::PolicyParams& params() { return params_; }
  const rollout::EpisodeStats& episode_stats() const { return stats_; }
  std::int64_t timesteps() const { return timesteps_; }
  bool finished() const { return timesteps_ >= config_.total_timesteps; }

  // Episodes completed since the last drain.
  std::vector<envs::EpisodeRecord> drain_episodes();

  void set_minibatch_hook(MinibatchHook hook) { hook_ = std::move(hook); }

 private:
  PpoConfig config_;
  envs::VecEnv& env_;
  nn::PolicyParams params_;
  nn::AdamState adam_;
  Rng action_rng_;
  Rng shuffle_rng_;
  rollout::EpisodeStats stats_;
  std::vector<envs::EpisodeRecord> pending_episodes_;
  std::int64_t timesteps_ = 0;
  int iteration_ = 0;
  MinibatchHook hook_;
};

}  // namespace clipppo::ppo

#endif  // CLIPPPO_PPO_HPP_
