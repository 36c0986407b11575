#include "clipppo/acrobot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clipppo/errors.hpp"

namespace clipppo::envs {

namespace {

double wrap(double x, double lo, double hi) {
  const double width = hi - lo;
  while (x > hi) x -= width;
  while (x < lo) x += width;
  return x;
}

}  // namespace

Acrobot::Acrobot() : rng_(0) {
  spec_.name = "acrobot";
  spec_.obs_dim = 6;
  spec_.action.kind = ActionKind::discrete;
  spec_.action.n = 3;
  spec_.max_episode_steps = kMaxEpisodeSteps;
  state_.setZero();
}

Eigen::VectorXd Acrobot::reset(std::uint64_t seed) {
  rng_ = Rng(seed);
  return reset();
}

Eigen::VectorXd Acrobot::reset() {
  for (int i = 0; i < 4; ++i) state_[i] = rng_.uniform(-kInitRange, kInitRange);
  step_count_ = 0;
  needs_reset_ = false;
  return observe();
}

void Acrobot::set_state(const Eigen::VectorXd& state) {
  state_ = state;
  step_count_ = 0;
  needs_reset_ = false;
}

void Acrobot::set_integration_substeps(int substeps) {
  if (substeps < 1) throw UsageError("acrobot: substeps must be >= 1");
  substeps_ = substeps;
}

Eigen::VectorXd Acrobot::observe() const {
  Eigen::VectorXd obs(6);
  obs[0] = std::cos(state_[0]);
  obs[1] = std::sin(state_[0]);
  obs[2] = std::cos(state_[1]);
  obs[3] = std::sin(state_[1]);
  obs[4] = state_[2];
  obs[5] = state_[3];
  return obs;
}

Eigen::Vector4d Acrobot::dynamics(const Eigen::Vector4d& s, double torque) {
  const double m1 = kLinkMass1, m2 = kLinkMass2;
  const double l1 = kLinkLength1;
  const double lc1 = kLinkCom1, lc2 = kLinkCom2;
  const double i1 = kLinkMoi, i2 = kLinkMoi;
  const double g = kGravity;
  const double pi = std::numbers::pi;

  const double theta1 = s[0], theta2 = s[1];
  const double dtheta1 = s[2], dtheta2 = s[3];

  const double d1 =
      m1 * lc1 * lc1 + m2 * (l1 * l1 + lc2 * lc2 + 2.0 * l1 * lc2 * std::cos(theta2)) + i1 + i2;
  const double d2 = m2 * (lc2 * lc2 + l1 * lc2 * std::cos(theta2)) + i2;
  const double phi2 = m2 * lc2 * g * std::cos(theta1 + theta2 - pi / 2.0);
  const double phi1 = -m2 * l1 * lc2 * dtheta2 * dtheta2 * std::sin(theta2) -
                      2.0 * m2 * l1 * lc2 * dtheta2 * dtheta1 * std::sin(theta2) +
                      (m1 * lc1 + m2 * l1) * g * std::cos(theta1 - pi / 2.0) + phi2;
  const double ddtheta2 =
      (torque + d2 / d1 * phi1 - m2 * l1 * lc2 * dtheta1 * dtheta1 * std::sin(theta2) - phi2) /
      (m2 * lc2 * lc2 + i2 - d2 * d2 / d1);
  const double ddtheta1 = -(d2 * ddtheta2 + phi1) / d1;

  return {dtheta1, dtheta2, ddtheta1, ddtheta2};
}

StepResult Acrobot::step(const Action& action) {
  if (needs_reset_) throw UsageError("acrobot: step called on a finished episode");
  const int* idx = std::get_if<int>(&action);
  if (idx == nullptr) throw UsageError("acrobot: expected a discrete action");
  if (*idx < 0 || *idx >= spec_.action.n)
    throw UsageError("acrobot: action index " + std::to_string(*idx) + " out of range");

  const double torque = kTorqueMag * static_cast<double>(*idx - 1);

  Eigen::Vector4d s = state_;
  const double h = kDt / static_cast<double>(substeps_);
  for (int sub = 0; sub < substeps_; ++sub) {
    const Eigen::Vector4d k1 = dynamics(s, torque);
    const Eigen::Vector4d k2 = dynamics(s + 0.5 * h * k1, torque);
    const Eigen::Vector4d k3 = dynamics(s + 0.5 * h * k2, torque);
    const Eigen::Vector4d k4 = dynamics(s + h * k3, torque);
    s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  const double pi = std::numbers::pi;
  s[0] = wrap(s[0], -pi, pi);
  s[1] = wrap(s[1], -pi, pi);
  s[2] = std::clamp(s[2], -kMaxVel1, kMaxVel1);
  s[3] = std::clamp(s[3], -kMaxVel2, kMaxVel2);
  state_ = s;
  ++step_count_;

  const bool terminal = -std::cos(state_[0]) - std::cos(state_[1] + state_[0]) > 1.0;

  StepResult out;
  out.obs = observe();
  out.reward = terminal ? 0.0 : -1.0;
  out.terminated = terminal;
  out.truncated = step_count_ >= kMaxEpisodeSteps;
  needs_reset_ = out.terminated || out.truncated;
  return out;
}

}  // namespace clipppo::envs
