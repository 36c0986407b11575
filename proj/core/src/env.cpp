#include "clipppo/env.hpp"

#include "clipppo/acrobot.hpp"
#include "clipppo/cartpole.hpp"
#include "clipppo/errors.hpp"
#include "clipppo/pendulum.hpp"

namespace clipppo::envs {

std::unique_ptr<Env> make_env(const std::string& id) {
  if (id == "cartpole") return std::make_unique<CartPole>();
  if (id == "pendulum") return std::make_unique<Pendulum>();
  if (id == "acrobot") return std::make_unique<Acrobot>();
  throw UsageError("unknown environment id '" + id + "' (expected cartpole|pendulum|acrobot)");
}

}  // namespace clipppo::envs
