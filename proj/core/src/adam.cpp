#include "clipppo/adam.hpp"

#include <cmath>

#include "clipppo/errors.hpp"

namespace clipppo::nn {

AdamState::AdamState(const PolicyParams& params, const AdamConfig& config) : config_(config) {
  const auto n = static_cast<Eigen::Index>(param_count(params));
  m_ = Eigen::VectorXd::Zero(n);
  v_ = Eigen::VectorXd::Zero(n);
}

void AdamState::step(PolicyParams& params, const Grads& grads) {
  ++step_count_;
  const double bias1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_count_));
  const double bias2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_count_));

  // Walk params and grads in the same canonical order, advancing one flat
  // cursor through the moment buffers.
  std::vector<std::pair<const double*, Eigen::Index>> grad_arrays;
  visit_arrays(grads, [&](const std::string&, const double* data, const std::vector<Eigen::Index>& dims) {
    Eigen::Index n = 1;
    for (auto d : dims) n *= d;
    grad_arrays.emplace_back(data, n);
  });

  Eigen::Index cursor = 0;
  std::size_t which = 0;
  visit_arrays(params, [&](const std::string& name, double* data, const std::vector<Eigen::Index>& dims) {
    Eigen::Index n = 1;
    for (auto d : dims) n *= d;
    if (which >= grad_arrays.size() || grad_arrays[which].second != n)
      throw UsageError("adam: gradient shape mismatch at " + name);
    const double* g_arr = grad_arrays[which++].first;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = g_arr[i];
      double& m = m_[cursor + i];
      double& v = v_[cursor + i];
      m = config_.beta1 * m + (1.0 - config_.beta1) * g;
      v = config_.beta2 * v + (1.0 - config_.beta2) * g * g;
      const double m_hat = m / bias1;
      const double v_hat = v / bias2;
      data[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.eps);
    }
    cursor += n;
  });
}

}  // namespace clipppo::nn
