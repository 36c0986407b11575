#ifndef CLIPPPO_ENV_HPP_
#define CLIPPPO_ENV_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>

namespace clipppo::envs {

enum class ActionKind { discrete, continuous };

struct ActionSpace {
  ActionKind kind = ActionKind::discrete;
  int n = 0;             // discrete: number of actions (>= 2)
  int dim = 0;           // continuous: action dimension
  Eigen::VectorXd low;   // continuous bounds, low < high elementwise
  Eigen::VectorXd high;
};

struct EnvSpec {
  std::string name;
  int obs_dim = 0;
  ActionSpace action;
  int max_episode_steps = 0;
};

// Discrete index or real torque vector.
using Action = std::variant<int, Eigen::VectorXd>;

struct StepResult {
  Eigen::VectorXd obs;
  double reward = 0.0;
  bool terminated = false;  // task failure/success
  bool truncated = false;   // time limit hit
};

inline bool done(const StepResult& r) { return r.terminated || r.truncated; }

// Deterministic, seedable single-environment state machine. (seed, action
// sequence) fully determines observations, rewards and flags.
class Env {
 public:
  virtual ~Env() = default;

  virtual const EnvSpec& spec() const = 0;

  // Seed the internal stream and draw an initial state from the task's
  // standard initial distribution. Identical seed, identical observation.
  virtual Eigen::VectorXd reset(std::uint64_t seed) = 0;

  // Draw the next initial state from the current stream without reseeding.
  // Used by the vector wrapper for auto-reset.
  virtual Eigen::VectorXd reset() = 0;

  // Advance one control timestep. Discrete actions are validated;
  // continuous actions are clamped to bounds before applying.
  // Stepping a finished (or never reset) episode is a usage error.
  virtual StepResult step(const Action& action) = 0;

  // Raw internal state vector and step counter, exposed for tests.
  virtual Eigen::VectorXd state() const = 0;
  virtual void set_state(const Eigen::VectorXd& state) = 0;
  virtual int step_count() const = 0;
};

// Environment ids: "cartpole", "pendulum", "acrobot".
std::unique_ptr<Env> make_env(const std::string& id);

}  // namespace clipppo::envs

#endif  // CLIPPPO_ENV_HPP_
