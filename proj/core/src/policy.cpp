#include "clipppo/policy.hpp"

#include <cmath>

#include "clipppo/distributions.hpp"
#include "clipppo/errors.hpp"

namespace clipppo::nn {

PolicyParams make_policy(const envs::EnvSpec& spec, std::uint64_t init_seed,
                         const std::vector<int>& hidden) {
  PolicyParams p;
  p.continuous = spec.action.kind == envs::ActionKind::continuous;
  p.action_dim = p.continuous ? spec.action.dim : spec.action.n;

  std::vector<int> policy_sizes{spec.obs_dim};
  std::vector<int> value_sizes{spec.obs_dim};
  for (int h : hidden) {
    policy_sizes.push_back(h);
    value_sizes.push_back(h);
  }
  policy_sizes.push_back(p.action_dim);
  value_sizes.push_back(1);
  p.policy_net = Mlp(policy_sizes);
  p.value_net = Mlp(value_sizes);

  Rng rng(init_seed);
  const double hidden_gain = std::sqrt(2.0);
  auto init_net = [&](Mlp& net, double head_gain) {
    auto& layers = net.layers();
    for (std::size_t i = 0; i < layers.size(); ++i)
      orthogonal_init(layers[i], i + 1 == layers.size() ? head_gain : hidden_gain, rng);
  };
  init_net(p.policy_net, 0.01);
  init_net(p.value_net, 1.0);

  if (p.continuous) p.log_std = Eigen::VectorXd::Zero(p.action_dim);
  return p;
}

Grads zero_grads(const PolicyParams& params) {
  Grads g;
  g.policy = params.policy_net.zero_grads();
  g.value = params.value_net.zero_grads();
  g.log_std = Eigen::VectorXd::Zero(params.log_std.size());
  return g;
}

void scale_grads(Grads& grads, double factor) {
  for (auto& layer : grads.policy) {
    layer.w *= factor;
    layer.b *= factor;
  }
  for (auto& layer : grads.value) {
    layer.w *= factor;
    layer.b *= factor;
  }
  grads.log_std *= factor;
}

double grad_global_norm(const Grads& grads) {
  double sq = 0.0;
  for (const auto& layer : grads.policy) sq += layer.w.squaredNorm() + layer.b.squaredNorm();
  for (const auto& layer : grads.value) sq += layer.w.squaredNorm() + layer.b.squaredNorm();
  sq += grads.log_std.squaredNorm();
  return std::sqrt(sq);
}

std::size_t param_count(const PolicyParams& params) {
  return params.policy_net.param_count() + params.value_net.param_count() +
         static_cast<std::size_t>(params.log_std.size());
}

namespace {

template <typename Layers, typename Fn>
void visit_layers(const std::string& prefix, Layers& layers, const Fn& fn) {
  for (std::size_t i = 0; i < layers.size(); ++i) {
    auto& layer = layers[i];
    const std::string base = prefix + ".l" + std::to_string(i);
    fn(base + ".w", layer.w.data(), {layer.w.rows(), layer.w.cols()});
    fn(base + ".b", layer.b.data(), {layer.b.size()});
  }
}

}  // namespace

void visit_arrays(PolicyParams& params, const ArrayVisitor& fn) {
  visit_layers("policy", params.policy_net.layers(), fn);
  visit_layers("value", params.value_net.layers(), fn);
  if (params.log_std.size() > 0) fn("log_std", params.log_std.data(), {params.log_std.size()});
}

void visit_arrays(const PolicyParams& params, const ConstArrayVisitor& fn) {
  visit_layers("policy", params.policy_net.layers(), fn);
  visit_layers("value", params.value_net.layers(), fn);
  if (params.log_std.size() > 0) fn("log_std", params.log_std.data(), {params.log_std.size()});
}

void visit_arrays(Grads& grads, const ArrayVisitor& fn) {
  visit_layers("policy", grads.policy, fn);
  visit_layers("value", grads.value, fn);
  if (grads.log_std.size() > 0) fn("log_std", grads.log_std.data(), {grads.log_std.size()});
}

void visit_arrays(const Grads& grads, const ConstArrayVisitor& fn) {
  visit_layers("policy", grads.policy, fn);
  visit_layers("value", grads.value, fn);
  if (grads.log_std.size() > 0) fn("log_std", grads.log_std.data(), {grads.log_std.size()});
}

ActOut act(const PolicyParams& params, const Eigen::MatrixXd& obs, Rng& rng) {
  ActOut out;
  const Eigen::MatrixXd policy_out = params.policy_net.forward(obs);
  out.values = params.value_net.forward(obs).col(0);
  if (params.continuous) {
    out.actions_c = sample_gaussian(policy_out, params.log_std, rng);
    Eigen::VectorXd entropies;
    gaussian_logprob_entropy(policy_out, params.log_std, out.actions_c, out.log_probs, entropies);
  } else {
    out.actions_d.resize(static_cast<std::size_t>(obs.rows()));
    for (Eigen::Index i = 0; i < obs.rows(); ++i)
      out.actions_d[static_cast<std::size_t>(i)] = sample_categorical(policy_out.row(i), rng);
    Eigen::VectorXd entropies;
    categorical_logprob_entropy(policy_out, out.actions_d, out.log_probs, entropies);
  }
  return out;
}

void logprob_entropy(const PolicyParams& params, const Eigen::MatrixXd& policy_out,
                     const std::vector<int>& actions_d, const Eigen::MatrixXd& actions_c,
                     Eigen::VectorXd& log_probs, Eigen::VectorXd& entropies) {
  if (params.continuous)
    gaussian_logprob_entropy(policy_out, params.log_std, actions_c, log_probs, entropies);
  else
    categorical_logprob_entropy(policy_out, actions_d, log_probs, entropies);
}

}  // namespace clipppo::nn
