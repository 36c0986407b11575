#ifndef CLIPPPO_CARTPOLE_HPP_
#define CLIPPPO_CARTPOLE_HPP_

#include "clipppo/env.hpp"
#include "clipppo/rng.hpp"

namespace clipppo::envs {

// Cart-pole balancing with two discrete push actions. Constants, reward,
// termination thresholds and the explicit Euler integrator follow the
// CartPole-v1 reference definition. State: (x, x_dot, theta, theta_dot).
class CartPole final : public Env {
 public:
  static constexpr double kGravity = 9.8;
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.1;
  static constexpr double kPoleHalfLength = 0.5;
  static constexpr double kForceMag = 10.0;
  static constexpr double kDt = 0.02;
  static constexpr double kXThreshold = 2.4;
  static constexpr double kThetaThresholdRad = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  static constexpr double kInitRange = 0.05;
  static constexpr int kMaxEpisodeSteps = 500;

  CartPole();

  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd reset(std::uint64_t seed) override;
  Eigen::VectorXd reset() override;
  StepResult step(const Action& action) override;
  Eigen::VectorXd state() const override { return state_; }
  void set_state(const Eigen::VectorXd& state) override;
  int step_count() const override { return step_count_; }

 private:
  EnvSpec spec_;
  Eigen::Vector4d state_;
  Rng rng_;
  int step_count_ = 0;
  bool needs_reset_ = true;
};

}  // namespace clipppo::envs

#endif  // CLIPPPO_CARTPOLE_HPP_
