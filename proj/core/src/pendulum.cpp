#include "clipppo/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clipppo/errors.hpp"

namespace clipppo::envs {

namespace {

double wrap_to_pi(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(x + std::numbers::pi, two_pi);
  if (y < 0.0) y += two_pi;
  return y - std::numbers::pi;
}

}  // namespace

Pendulum::Pendulum() : rng_(0) {
  spec_.name = "pendulum";
  spec_.obs_dim = 3;
  spec_.action.kind = ActionKind::continuous;
  spec_.action.dim = 1;
  spec_.action.low = Eigen::VectorXd::Constant(1, -kMaxTorque);
  spec_.action.high = Eigen::VectorXd::Constant(1, kMaxTorque);
  spec_.max_episode_steps = kMaxEpisodeSteps;
  state_.setZero();
}

Eigen::VectorXd Pendulum::reset(std::uint64_t seed) {
  rng_ = Rng(seed);
  return reset();
}

Eigen::VectorXd Pendulum::reset() {
  state_[0] = rng_.uniform(-kInitThetaRange, kInitThetaRange);
  state_[1] = rng_.uniform(-kInitThetaDotRange, kInitThetaDotRange);
  step_count_ = 0;
  needs_reset_ = false;
  return observe();
}

void Pendulum::set_state(const Eigen::VectorXd& state) {
  state_ = state;
  step_count_ = 0;
  needs_reset_ = false;
}

Eigen::VectorXd Pendulum::observe() const {
  Eigen::VectorXd obs(3);
  obs[0] = std::cos(state_[0]);
  obs[1] = std::sin(state_[0]);
  obs[2] = state_[1];
  return obs;
}

StepResult Pendulum::step(const Action& action) {
  if (needs_reset_) throw UsageError("pendulum: step called on a finished episode");
  const Eigen::VectorXd* torque_vec = std::get_if<Eigen::VectorXd>(&action);
  if (torque_vec == nullptr || torque_vec->size() != 1)
    throw UsageError("pendulum: expected a 1-dimensional continuous action");

  const double u = std::clamp((*torque_vec)[0], -kMaxTorque, kMaxTorque);
  const double theta = state_[0];
  const double theta_dot = state_[1];

  const double wrapped = wrap_to_pi(theta);
  const double cost = wrapped * wrapped + 0.1 * theta_dot * theta_dot + 0.001 * u * u;

  // Reference v0 semantics: the new angle uses the unclamped new velocity,
  // the speed limit is applied afterwards.
  double new_theta_dot =
      theta_dot + (-3.0 * kGravity / (2.0 * kLength) * std::sin(theta + std::numbers::pi) +
                   3.0 / (kMass * kLength * kLength) * u) *
                      kDt;
  const double new_theta = theta + new_theta_dot * kDt;
  new_theta_dot = std::clamp(new_theta_dot, -kMaxSpeed, kMaxSpeed);

  state_[0] = new_theta;
  state_[1] = new_theta_dot;
  ++step_count_;

  StepResult out;
  out.obs = observe();
  out.reward = -cost;
  out.terminated = false;
  out.truncated = step_count_ >= kMaxEpisodeSteps;
  needs_reset_ = out.truncated;
  return out;
}

}  // namespace clipppo::envs
