#include "clipppo/env_constants.hpp"

#include <fstream>
#include <sstream>

#include "clipppo/acrobot.hpp"
#include "clipppo/cartpole.hpp"
#include "clipppo/errors.hpp"
#include "clipppo/pendulum.hpp"

namespace clipppo::envs {

std::map<std::string, double> constants_table() {
  std::map<std::string, double> t;

  t["cartpole.gravity"] = CartPole::kGravity;
  t["cartpole.cart_mass"] = CartPole::kCartMass;
  t["cartpole.pole_mass"] = CartPole::kPoleMass;
  t["cartpole.pole_half_length"] = CartPole::kPoleHalfLength;
  t["cartpole.force_mag"] = CartPole::kForceMag;
  t["cartpole.dt"] = CartPole::kDt;
  t["cartpole.x_threshold"] = CartPole::kXThreshold;
  t["cartpole.theta_threshold_rad"] = CartPole::kThetaThresholdRad;
  t["cartpole.init_range"] = CartPole::kInitRange;
  t["cartpole.max_episode_steps"] = CartPole::kMaxEpisodeSteps;

  t["pendulum.gravity"] = Pendulum::kGravity;
  t["pendulum.mass"] = Pendulum::kMass;
  t["pendulum.length"] = Pendulum::kLength;
  t["pendulum.dt"] = Pendulum::kDt;
  t["pendulum.max_speed"] = Pendulum::kMaxSpeed;
  t["pendulum.max_torque"] = Pendulum::kMaxTorque;
  t["pendulum.init_theta_range"] = Pendulum::kInitThetaRange;
  t["pendulum.init_theta_dot_range"] = Pendulum::kInitThetaDotRange;
  t["pendulum.max_episode_steps"] = Pendulum::kMaxEpisodeSteps;

  t["acrobot.link_length_1"] = Acrobot::kLinkLength1;
  t["acrobot.link_length_2"] = Acrobot::kLinkLength2;
  t["acrobot.link_mass_1"] = Acrobot::kLinkMass1;
  t["acrobot.link_mass_2"] = Acrobot::kLinkMass2;
  t["acrobot.link_com_1"] = Acrobot::kLinkCom1;
  t["acrobot.link_com_2"] = Acrobot::kLinkCom2;
  t["acrobot.link_moi"] = Acrobot::kLinkMoi;
  t["acrobot.gravity"] = Acrobot::kGravity;
  t["acrobot.dt"] = Acrobot::kDt;
  t["acrobot.max_vel_1"] = Acrobot::kMaxVel1;
  t["acrobot.max_vel_2"] = Acrobot::kMaxVel2;
  t["acrobot.torque_mag"] = Acrobot::kTorqueMag;
  t["acrobot.init_range"] = Acrobot::kInitRange;
  t["acrobot.max_episode_steps"] = Acrobot::kMaxEpisodeSteps;

  return t;
}

std::map<std::string, double> load_constants_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open constants table '" + path + "'");
  std::map<std::string, double> t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("malformed constants line: " + line);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto strip = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t\r");
      s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
    };
    strip(key);
    strip(value);
    t[key] = std::stod(value);
  }
  return t;
}

}  // namespace clipppo::envs
