#include "clipppo/ppo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "clipppo/distributions.hpp"
#include "clipppo/errors.hpp"

namespace clipppo::ppo {

void validate(const PpoConfig& config) {
  if (config.epochs < 1) throw UsageError("ppo config: epochs must be >= 1");
  if (config.minibatch < 1) throw UsageError("ppo config: minibatch must be >= 1");
  if (config.minibatch > config.batch_size())
    throw UsageError("ppo config: minibatch must not exceed n_envs * rollout_len");
  if (config.value_coef < 0.0 || config.entropy_coef < 0.0)
    throw UsageError("ppo config: loss coefficients must be >= 0");
  if (config.gamma < 0.0 || config.gamma > 1.0) throw UsageError("ppo config: gamma must lie in [0, 1]");
  if (config.gae_lambda < 0.0 || config.gae_lambda > 1.0)
    throw UsageError("ppo config: gae_lambda must lie in [0, 1]");
  if (config.rollout_len < 1) throw UsageError("ppo config: rollout_len must be >= 1");
  if (config.n_envs < 1) throw UsageError("ppo config: n_envs must be >= 1");
  if (config.total_timesteps < 1) throw UsageError("ppo config: total_timesteps must be >= 1");
  schedules::validate(config.schedule);
}

BatchSlice gather(const rollout::RolloutBatch& batch, const std::vector<int>& indices) {
  BatchSlice slice;
  slice.continuous = batch.continuous;
  const auto rows = static_cast<Eigen::Index>(indices.size());
  slice.obs.resize(rows, batch.obs.cols());
  if (batch.continuous)
    slice.actions_c.resize(rows, batch.actions_c.cols());
  else
    slice.actions_d.resize(indices.size());
  slice.old_log_probs.resize(rows);
  slice.advantages.resize(rows);
  slice.returns.resize(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const int row = indices[static_cast<std::size_t>(k)];
    slice.obs.row(k) = batch.obs.row(row);
    if (batch.continuous)
      slice.actions_c.row(k) = batch.actions_c.row(row);
    else
      slice.actions_d[static_cast<std::size_t>(k)] = batch.actions_d[static_cast<std::size_t>(row)];
    slice.old_log_probs[k] = batch.old_log_probs[row];
    slice.advantages[k] = batch.advantages[row];
    slice.returns[k] = batch.returns[row];
  }
  return slice;
}

void normalize_advantages(Eigen::VectorXd& advantages) {
  const auto n = advantages.size();
  const double mean = advantages.mean();
  double std_dev = 0.0;
  if (n > 1) {
    const double sq = (advantages.array() - mean).square().sum();
    std_dev = std::sqrt(sq / static_cast<double>(n - 1));
  }
  advantages = (advantages.array() - mean) / (std_dev + 1e-8);
}

Eigen::VectorXd ratio(const Eigen::VectorXd& new_log_probs, const Eigen::VectorXd& old_log_probs) {
  if (new_log_probs.size() != old_log_probs.size())
    throw UsageError("ratio: log-prob vectors must have equal length");
  Eigen::VectorXd r = (new_log_probs - old_log_probs).array().exp();
  if (!r.allFinite()) throw TrainingError("ratio: non-finite probability ratio");
  return r;
}

double clipped_surrogate(const Eigen::VectorXd& r, const Eigen::VectorXd& advantages, double eps) {
  if (eps < 0.0) throw UsageError("clipped_surrogate: eps must be >= 0");
  if (r.size() != advantages.size()) throw UsageError("clipped_surrogate: length mismatch");
  const Eigen::ArrayXd unclipped = r.array() * advantages.array();
  const Eigen::ArrayXd clipped =
      r.array().min(1.0 + eps).max(1.0 - eps) * advantages.array();
  return unclipped.min(clipped).mean();
}

double clip_fraction(const Eigen::VectorXd& r, double eps) {
  if (eps < 0.0) throw UsageError("clip_fraction: eps must be >= 0");
  const auto n = r.size();
  if (n == 0) return 0.0;
  Eigen::Index clipped = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(r[i] - 1.0) > eps) ++clipped;
  return static_cast<double>(clipped) / static_cast<double>(n);
}

namespace {

struct LossForward {
  LossReport report;
  Eigen::MatrixXd policy_out;
  nn::MlpCache policy_cache;
  nn::MlpCache value_cache;
  Eigen::VectorXd new_log_probs;
  Eigen::VectorXd entropies;
  Eigen::VectorXd values;
  Eigen::VectorXd r;
};

LossForward loss_forward(const nn::PolicyParams& params, const BatchSlice& slice, double eps,
                         double value_coef, double entropy_coef, bool with_cache) {
  LossForward f;
  if (with_cache) {
    f.policy_out = params.policy_net.forward(slice.obs, f.policy_cache);
    f.values = params.value_net.forward(slice.obs, f.value_cache).col(0);
  } else {
    f.policy_out = params.policy_net.forward(slice.obs);
    f.values = params.value_net.forward(slice.obs).col(0);
  }
  nn::logprob_entropy(params, f.policy_out, slice.actions_d, slice.actions_c, f.new_log_probs,
                      f.entropies);
  f.r = ratio(f.new_log_probs, slice.old_log_probs);

  f.report.surrogate = clipped_surrogate(f.r, slice.advantages, eps);
  f.report.value_loss = (f.values - slice.returns).array().square().mean();
  f.report.entropy = f.entropies.mean();
  f.report.total =
      -f.report.surrogate + value_coef * f.report.value_loss - entropy_coef * f.report.entropy;
  f.report.clip_fraction = clip_fraction(f.r, eps);
  f.report.approx_kl = (slice.old_log_probs - f.new_log_probs).mean();
  return f;
}

}  // namespace

LossReport total_loss(const nn::PolicyParams& params, const BatchSlice& slice, double eps,
                      double value_coef, double entropy_coef) {
  return loss_forward(params, slice, eps, value_coef, entropy_coef, false).report;
}

LossReport loss_and_grads(const nn::PolicyParams& params, const BatchSlice& slice, double eps,
                          double value_coef, double entropy_coef, nn::Grads& grads) {
  LossForward f = loss_forward(params, slice, eps, value_coef, entropy_coef, true);
  const auto n = f.r.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  // d total / d new_log_prob: only through the surrogate, and only where the
  // min selects the unclipped branch (ties included).
  Eigen::VectorXd d_log_probs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double unclipped = f.r[i] * slice.advantages[i];
    const double clipped = std::clamp(f.r[i], 1.0 - eps, 1.0 + eps) * slice.advantages[i];
    const bool unclipped_selected = unclipped <= clipped;
    d_log_probs[i] = unclipped_selected ? -inv_n * f.r[i] * slice.advantages[i] : 0.0;
  }
  const Eigen::VectorXd d_entropies = Eigen::VectorXd::Constant(n, -entropy_coef * inv_n);

  grads = nn::zero_grads(params);
  Eigen::MatrixXd d_policy_out;
  if (params.continuous) {
    nn::gaussian_backward(f.policy_out, params.log_std, slice.actions_c, d_log_probs, d_entropies,
                          d_policy_out, grads.log_std);
  } else {
    d_policy_out = nn::categorical_backward(f.policy_out, slice.actions_d, d_log_probs, d_entropies);
  }
  params.policy_net.backward(f.policy_cache, d_policy_out, grads.policy);

  // d total / d value_i = value_coef * 2 * (v_i - R_i) / n
  Eigen::MatrixXd d_values =
      (value_coef * 2.0 * inv_n) * (f.values - slice.returns);
  params.value_net.backward(f.value_cache, d_values, grads.value);

  if (!std::isfinite(f.report.total)) throw TrainingError("loss_and_grads: non-finite loss");
  return f.report;
}

Trainer::Trainer(const PpoConfig& config, envs::VecEnv& env)
    : config_(config),
      env_(env),
      params_(nn::make_policy(env.spec(), derive_seed(config.seed, "init"))),
      adam_(params_, {config.learning_rate, config.adam_beta1, config.adam_beta2, config.adam_eps}),
      action_rng_(derive_seed(config.seed, "actions")),
      shuffle_rng_(derive_seed(config.seed, "shuffle")) {
  validate(config_);
  if (env.size() != config_.n_envs)
    throw UsageError("trainer: vec env size does not match config n_envs");
  env_.reset(derive_seed(config_.seed, "envs"));
}

MetricsRow Trainer::train_iteration() {
  const auto start = std::chrono::steady_clock::now();
  if (finished()) throw UsageError("train_iteration: training budget already consumed");

  rollout::RolloutBatch batch = rollout::collect(params_, env_, config_.rollout_len, action_rng_,
                                                 stats_, &pending_episodes_, config_.gamma);
  timesteps_ += batch.rows();
  ++iteration_;

  // Line-6 placement: the schedule sees the timesteps consumed through this
  // iteration's collection, clamped to the budget for the final partial
  // iteration; all K epochs share the value.
  const double schedule_t =
      static_cast<double>(std::min(timesteps_, config_.total_timesteps));
  const double eps =
      schedules::epsilon_at(config_.schedule, schedule_t, static_cast<double>(config_.total_timesteps));

  rollout::compute_gae(batch, config_.gamma, config_.gae_lambda);

  double sum_clip_fraction = 0.0, sum_surrogate = 0.0, sum_value_loss = 0.0, sum_entropy = 0.0;
  double sum_grad_norm = 0.0;
  int updates = 0;

  nn::Grads grads;
  for (int epoch = 0; epoch < config_.epochs; ++epoch) {
    const auto slices = rollout::minibatches(batch.rows(), config_.minibatch, shuffle_rng_);
    for (std::size_t mb = 0; mb < slices.size(); ++mb) {
      BatchSlice slice = gather(batch, slices[mb]);
      if (config_.normalize_advantages) normalize_advantages(slice.advantages);

      LossReport report;
      try {
        report = loss_and_grads(params_, slice, eps, config_.value_coef, config_.entropy_coef, grads);
      } catch (const TrainingError& e) {
        throw TrainingError("iteration " + std::to_string(iteration_) + ", epoch " +
                            std::to_string(epoch) + ", minibatch " + std::to_string(mb) + ": " +
                            e.what());
      }

      const double norm = nn::grad_global_norm(grads);
      if (config_.grad_norm_cap > 0.0 && norm > config_.grad_norm_cap)
        nn::scale_grads(grads, config_.grad_norm_cap / norm);
      adam_.step(params_, grads);

      if (hook_) hook_(report, epoch, static_cast<int>(mb));
      sum_clip_fraction += report.clip_fraction;
      sum_surrogate += report.surrogate;
      sum_value_loss += report.value_loss;
      sum_entropy += report.entropy;
      sum_grad_norm += norm;
      ++updates;
    }
  }

  MetricsRow row;
  row.iteration = iteration_;
  row.timesteps = timesteps_;
  row.epsilon = eps;
  row.clip_fraction = sum_clip_fraction / updates;
  row.surrogate_loss = sum_surrogate / updates;
  row.value_loss = sum_value_loss / updates;
  row.entropy = sum_entropy / updates;
  row.mean_ep_return_last100 = stats_.mean_last100();
  row.episodes_completed = stats_.count();
  row.grad_norm = sum_grad_norm / updates;
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<envs::EpisodeRecord> Trainer::drain_episodes() {
  std::vector<envs::EpisodeRecord> drained;
  drained.swap(pending_episodes_);
  return drained;
}

}  // namespace clipppo::ppo
