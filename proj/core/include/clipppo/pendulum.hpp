#ifndef CLIPPPO_PENDULUM_HPP_
#define CLIPPPO_PENDULUM_HPP_

#include "clipppo/env.hpp"
#include "clipppo/rng.hpp"

namespace clipppo::envs {

// Torque-controlled inverted pendulum following the Pendulum-v0 reference
// definition: semi-implicit Euler with dt=0.05, reward
// -(theta~^2 + 0.1*theta_dot^2 + 0.001*u^2) with theta~ wrapped to
// [-pi, pi]. Never terminates; truncates at 200 steps.
// State: (theta, theta_dot); observation: (cos theta, sin theta, theta_dot).
class Pendulum final : public Env {
 public:
  static constexpr double kGravity = 10.0;
  static constexpr double kMass = 1.0;
  static constexpr double kLength = 1.0;
  static constexpr double kDt = 0.05;
  static constexpr double kMaxSpeed = 8.0;
  static constexpr double kMaxTorque = 2.0;
  static constexpr double kInitThetaRange = 3.14159265358979323846;
  static constexpr double kInitThetaDotRange = 1.0;
  static constexpr int kMaxEpisodeSteps = 200;

  Pendulum();

  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd reset(std::uint64_t seed) override;
  Eigen::VectorXd reset() override;
  StepResult step(const Action& action) override;
  Eigen::VectorXd state() const override { return state_; }
  void set_state(const Eigen::VectorXd& state) override;
  int step_count() const override { return step_count_; }

 private:
  Eigen::VectorXd observe() const;

  EnvSpec spec_;
  Eigen::Vector2d state_;
  Rng rng_;
  int step_count_ = 0;
  bool needs_reset_ = true;
};

}  // namespace clipppo::envs

#endif  // CLIPPPO_PENDULUM_HPP_
