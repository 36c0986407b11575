#ifndef CLIPPPO_VEC_ENV_HPP_
#define CLIPPPO_VEC_ENV_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "clipppo/env.hpp"

namespace clipppo::envs {

struct EpisodeRecord {
  int slot = 0;
  double episode_return = 0.0;
  int length = 0;
};

// N parallel instances of one task with auto-reset: a finished sub-episode
// records its return and length into the episode channel and the slot
// resets in place from its own stream, so fixed-T rollouts never stall.
class VecEnv {
 public:
  VecEnv(const std::string& env_id, int n);

  const EnvSpec& spec() const { return envs_.front()->spec(); }
  int size() const { return static_cast<int>(envs_.size()); }

  // Seeds slot i from derive_seed(master_seed, "env-slot", i), so results
  // are independent of how many slots exist. Returns the N x obs_dim
  // initial observation matrix.
  Eigen::MatrixXd reset(std::uint64_t master_seed);

  struct StepOut {
    Eigen::MatrixXd obs;        // post-reset observation for finished slots
    Eigen::VectorXd rewards;
    std::vector<std::uint8_t> terminated;
    std::vector<std::uint8_t> truncated;
    Eigen::MatrixXd final_obs;  // rows valid only where a slot finished
  };

  // One action per slot. Per-slot action errors are rethrown with the slot
  // index attached.
  StepOut step(const std::vector<Action>& actions);

  // Current observation of every slot.
  const Eigen::MatrixXd& obs() const { return obs_; }

  // Completed episodes since the last drain, in completion order.
  std::vector<EpisodeRecord> drain_episodes();

  Env& slot(int i) { return *envs_.at(static_cast<std::size_t>(i)); }

 private:
  std::vector<std::unique_ptr<Env>> envs_;
  Eigen::MatrixXd obs_;
  std::vector<double> returns_;
  std::vector<int> lengths_;
  std::vector<EpisodeRecord> completed_;
};

}  // namespace clipppo::envs

#endif  // CLIPPPO_VEC_ENV_HPP_
