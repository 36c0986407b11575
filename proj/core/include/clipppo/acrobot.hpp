#ifndef CLIPPPO_ACROBOT_HPP_
#define CLIPPPO_ACROBOT_HPP_

#include "clipppo/env.hpp"
#include "clipppo/rng.hpp"

namespace clipppo::envs {

// Two-link underactuated swing-up following the Acrobot-v1 reference
// definition ("book" dynamics), integrated with 4th-order Runge-Kutta.
// State: (theta1, theta2, dtheta1, dtheta2); observation:
// (cos t1, sin t1, cos t2, sin t2, dt1, dt2). Reward -1 per non-terminal
// step, 0 on the terminating step.
class Acrobot final : public Env {
 public:
  static constexpr double kLinkLength1 = 1.0;
  static constexpr double kLinkLength2 = 1.0;
  static constexpr double kLinkMass1 = 1.0;
  static constexpr double kLinkMass2 = 1.0;
  static constexpr double kLinkCom1 = 0.5;
  static constexpr double kLinkCom2 = 0.5;
  static constexpr double kLinkMoi = 1.0;
  static constexpr double kGravity = 9.8;
  static constexpr double kDt = 0.2;
  static constexpr double kMaxVel1 = 4.0 * 3.14159265358979323846;
  static constexpr double kMaxVel2 = 9.0 * 3.14159265358979323846;
  static constexpr double kTorqueMag = 1.0;  // torques are {-1, 0, +1}
  static constexpr double kInitRange = 0.1;
  static constexpr int kMaxEpisodeSteps = 500;

  Acrobot();

  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd reset(std::uint64_t seed) override;
  Eigen::VectorXd reset() override;
  StepResult step(const Action& action) override;
  Eigen::VectorXd state() const override { return state_; }
  void set_state(const Eigen::VectorXd& state) override;
  int step_count() const override { return step_count_; }

  // Number of RK4 substeps per control timestep (default 1, i.e. a single
  // step of size kDt). Exposed so tests can halve the internal dt.
  void set_integration_substeps(int substeps);

 private:
  static Eigen::Vector4d dynamics(const Eigen::Vector4d& s, double torque);
  Eigen::VectorXd observe() const;

  EnvSpec spec_;
  Eigen::Vector4d state_;
  Rng rng_;
  int step_count_ = 0;
  int substeps_ = 1;
  bool needs_reset_ = true;
};

}  // namespace clipppo::envs

#endif  // CLIPPPO_ACROBOT_HPP_
