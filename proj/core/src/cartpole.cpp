#include "clipppo/cartpole.hpp"

#include <cmath>

#include "clipppo/errors.hpp"

namespace clipppo::envs {

CartPole::CartPole() : rng_(0) {
  spec_.name = "cartpole";
  spec_.obs_dim = 4;
  spec_.action.kind = ActionKind::discrete;
  spec_.action.n = 2;
  spec_.max_episode_steps = kMaxEpisodeSteps;
  state_.setZero();
}

Eigen::VectorXd CartPole::reset(std::uint64_t seed) {
  rng_ = Rng(seed);
  return reset();
}

Eigen::VectorXd CartPole::reset() {
  for (int i = 0; i < 4; ++i) state_[i] = rng_.uniform(-kInitRange, kInitRange);
  step_count_ = 0;
  needs_reset_ = false;
  return state_;
}

void CartPole::set_state(const Eigen::VectorXd& state) {
  state_ = state;
  step_count_ = 0;
  needs_reset_ = false;
}

StepResult CartPole::step(const Action& action) {
  if (needs_reset_) throw UsageError("cartpole: step called on a finished episode");
  const int* idx = std::get_if<int>(&action);
  if (idx == nullptr) throw UsageError("cartpole: expected a discrete action");
  if (*idx < 0 || *idx >= spec_.action.n)
    throw UsageError("cartpole: action index " + std::to_string(*idx) + " out of range");

  const double force = (*idx == 1) ? kForceMag : -kForceMag;
  const double x = state_[0];
  const double x_dot = state_[1];
  const double theta = state_[2];
  const double theta_dot = state_[3];

  const double cos_theta = std::cos(theta);
  const double sin_theta = std::sin(theta);
  const double total_mass = kCartMass + kPoleMass;
  const double pole_mass_length = kPoleMass * kPoleHalfLength;

  const double temp = (force + pole_mass_length * theta_dot * theta_dot * sin_theta) / total_mass;
  const double theta_acc = (kGravity * sin_theta - cos_theta * temp) /
                           (kPoleHalfLength * (4.0 / 3.0 - kPoleMass * cos_theta * cos_theta / total_mass));
  const double x_acc = temp - pole_mass_length * theta_acc * cos_theta / total_mass;

  state_[0] = x + kDt * x_dot;
  state_[1] = x_dot + kDt * x_acc;
  state_[2] = theta + kDt * theta_dot;
  state_[3] = theta_dot + kDt * theta_acc;
  ++step_count_;

  StepResult out;
  out.obs = state_;
  out.reward = 1.0;
  out.terminated = state_[0] < -kXThreshold || state_[0] > kXThreshold ||
                   state_[2] < -kThetaThresholdRad || state_[2] > kThetaThresholdRad;
  out.truncated = step_count_ >= kMaxEpisodeSteps;
  needs_reset_ = out.terminated || out.truncated;
  return out;
}

}  // namespace clipppo::envs
