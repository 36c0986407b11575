#include "clipppo/vec_env.hpp"

#include <stdexcept>

#include "clipppo/errors.hpp"
#include "clipppo/rng.hpp"

namespace clipppo::envs {

VecEnv::VecEnv(const std::string& env_id, int n) {
  if (n < 1) throw UsageError("vec env: need at least one sub-environment");
  envs_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) envs_.push_back(make_env(env_id));
  obs_.resize(n, spec().obs_dim);
  returns_.assign(static_cast<std::size_t>(n), 0.0);
  lengths_.assign(static_cast<std::size_t>(n), 0);
}

Eigen::MatrixXd VecEnv::reset(std::uint64_t master_seed) {
  for (int i = 0; i < size(); ++i) {
    const std::uint64_t slot_seed = derive_seed(master_seed, "env-slot", static_cast<std::uint64_t>(i));
    obs_.row(i) = envs_[static_cast<std::size_t>(i)]->reset(slot_seed).transpose();
    returns_[static_cast<std::size_t>(i)] = 0.0;
    lengths_[static_cast<std::size_t>(i)] = 0;
  }
  completed_.clear();
  return obs_;
}

VecEnv::StepOut VecEnv::step(const std::vector<Action>& actions) {
  const int n = size();
  if (static_cast<int>(actions.size()) != n)
    throw UsageError("vec env: expected " + std::to_string(n) + " actions, got " +
                     std::to_string(actions.size()));

  StepOut out;
  out.obs.resize(n, spec().obs_dim);
  out.rewards.resize(n);
  out.terminated.assign(static_cast<std::size_t>(n), 0);
  out.truncated.assign(static_cast<std::size_t>(n), 0);
  out.final_obs = Eigen::MatrixXd::Zero(n, spec().obs_dim);

  for (int i = 0; i < n; ++i) {
    auto& env = *envs_[static_cast<std::size_t>(i)];
    StepResult r;
    try {
      r = env.step(actions[static_cast<std::size_t>(i)]);
    } catch (const UsageError& e) {
      throw UsageError("slot " + std::to_string(i) + ": " + e.what());
    }
    returns_[static_cast<std::size_t>(i)] += r.reward;
    lengths_[static_cast<std::size_t>(i)] += 1;
    out.rewards[i] = r.reward;
    out.terminated[static_cast<std::size_t>(i)] = r.terminated ? 1 : 0;
    out.truncated[static_cast<std::size_t>(i)] = r.truncated ? 1 : 0;

    if (done(r)) {
      out.final_obs.row(i) = r.obs.transpose();
      completed_.push_back({i, returns_[static_cast<std::size_t>(i)], lengths_[static_cast<std::size_t>(i)]});
      returns_[static_cast<std::size_t>(i)] = 0.0;
      lengths_[static_cast<std::size_t>(i)] = 0;
      out.obs.row(i) = env.reset().transpose();
    } else {
      out.obs.row(i) = r.obs.transpose();
    }
  }
  obs_ = out.obs;
  return out;
}

std::vector<EpisodeRecord> VecEnv::drain_episodes() {
  std::vector<EpisodeRecord> drained;
  drained.swap(completed_);
  return drained;
}

}  // namespace clipppo::envs
