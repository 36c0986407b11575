#ifndef CLIPPPO_ADAM_HPP_
#define CLIPPPO_ADAM_HPP_

#include <Eigen/Core>
#include <cstdint>

#include "clipppo/policy.hpp"

namespace clipppo::nn {

struct AdamConfig {
  double learning_rate = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-5;
};

// Standard bias-corrected Adam, gradient descent on the loss. Moments are
// kept as flat buffers over the canonical parameter order; one instance is
// bound to one parameter shape.
class AdamState {
 public:
  AdamState(const PolicyParams& params, const AdamConfig& config);

  void step(PolicyParams& params, const Grads& grads);

  std::int64_t step_count() const { return step_count_; }
  const AdamConfig& config() const { return config_; }

 private:
  AdamConfig config_;
  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
  std::int64_t step_count_ = 0;
};

}  // namespace clipppo::nn

#endif  // CLIPPPO_ADAM_HPP_
