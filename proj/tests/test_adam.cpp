#include <doctest.h>

#include "clipppo/adam.hpp"
#include "clipppo/policy.hpp"

using namespace clipppo::nn;
using clipppo::envs::ActionKind;
using clipppo::envs::EnvSpec;

namespace {

EnvSpec tiny_spec() {
  EnvSpec spec;
  spec.name = "tiny";
  spec.obs_dim = 2;
  spec.action.kind = ActionKind::discrete;
  spec.action.n = 2;
  spec.max_episode_steps = 10;
  return spec;
}

}  // namespace

TEST_CASE("zero gradients leave parameters unchanged but advance the step counter") {
  PolicyParams params = make_policy(tiny_spec(), 1, {4});
  PolicyParams before = params;
  AdamState adam(params, {});
  adam.step(params, zero_grads(params));
  CHECK(adam.step_count() == 1);
  visit_arrays(params, [&, idx = std::size_t{0}](const std::string& name, double* data,
                                                 const std::vector<Eigen::Index>& dims) mutable {
    Eigen::Index n = 1;
    for (auto d : dims) n *= d;
    std::vector<const double*> ref;
    visit_arrays(before, [&](const std::string& bname, const double* bdata,
                             const std::vector<Eigen::Index>&) {
      if (bname == name) ref.push_back(bdata);
    });
    REQUIRE(ref.size() == 1);
    for (Eigen::Index i = 0; i < n; ++i) CHECK(data[i] == ref[0][i]);
  });
}

TEST_CASE("first step with unit gradient moves by lr/(1 + eps)") {
  // Bias correction makes m_hat = v_hat = 1 on step one, so the update is
  // exactly lr / (sqrt(1) + eps).
  PolicyParams params = make_policy(tiny_spec(), 2, {4});
  const double w0 = params.policy_net.layers()[0].w(0, 0);

  Grads grads = zero_grads(params);
  grads.policy[0].w(0, 0) = 1.0;

  AdamConfig cfg;
  cfg.learning_rate = 0.001;
  AdamState adam(params, cfg);
  adam.step(params, grads);

  const double expected_step = 0.001 / (1.0 + cfg.eps);
  CHECK(params.policy_net.layers()[0].w(0, 0) ==
        doctest::Approx(w0 - expected_step).epsilon(1e-12));
}

TEST_CASE("identical gradient sequences give identical trajectories") {
  PolicyParams a = make_policy(tiny_spec(), 3, {4});
  PolicyParams b = make_policy(tiny_spec(), 3, {4});
  AdamState adam_a(a, {}), adam_b(b, {});
  clipppo::Rng rng_a(5), rng_b(5);
  for (int step = 0; step < 20; ++step) {
    Grads ga = zero_grads(a), gb = zero_grads(b);
    for (auto* g : {&ga, &gb}) {
      auto& rng = (g == &ga) ? rng_a : rng_b;
      visit_arrays(*g, [&](const std::string&, double* data, const std::vector<Eigen::Index>& dims) {
        Eigen::Index n = 1;
        for (auto d : dims) n *= d;
        for (Eigen::Index i = 0; i < n; ++i) data[i] = rng.normal();
      });
    }
    adam_a.step(a, ga);
    adam_b.step(b, gb);
  }
  bool identical = true;
  std::vector<double> flat_a, flat_b;
  visit_arrays(a, [&](const std::string&, const double* d, const std::vector<Eigen::Index>& dims) {
    Eigen::Index n = 1;
    for (auto dd : dims) n *= dd;
    flat_a.insert(flat_a.end(), d, d + n);
  });
  visit_arrays(b, [&](const std::string&, const double* d, const std::vector<Eigen::Index>& dims) {
    Eigen::Index n = 1;
    for (auto dd : dims) n *= dd;
    flat_b.insert(flat_b.end(), d, d + n);
  });
  REQUIRE(flat_a.size() == flat_b.size());
  for (std::size_t i = 0; i < flat_a.size(); ++i)
    if (flat_a[i] != flat_b[i]) identical = false;
  CHECK(identical);
}

TEST_CASE("gradient norm and clipping helpers") {
  PolicyParams params = make_policy(tiny_spec(), 4, {4});
  Grads grads = zero_grads(params);
  grads.policy[0].w(0, 0) = 3.0;
  grads.value[0].w(0, 0) = 4.0;
  CHECK(grad_global_norm(grads) == doctest::Approx(5.0).epsilon(1e-14));
  scale_grads(grads, 0.5 / 5.0);
  CHECK(grad_global_norm(grads) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("parameter count audit for the default architecture") {
  EnvSpec spec = tiny_spec();
  spec.obs_dim = 4;
  PolicyParams params = make_policy(spec, 7);  // default {64, 64}
  const std::size_t policy = 4 * 64 + 64 + 64 * 64 + 64 + 64 * 2 + 2;
  const std::size_t value = 4 * 64 + 64 + 64 * 64 + 64 + 64 * 1 + 1;
  CHECK(param_count(params) == policy + value);

  EnvSpec cont = spec;
  cont.action.kind = ActionKind::continuous;
  cont.action.dim = 3;
  cont.action.low = Eigen::VectorXd::Constant(3, -1.0);
  cont.action.high = Eigen::VectorXd::Constant(3, 1.0);
  PolicyParams cp = make_policy(cont, 8);
  const std::size_t cpolicy = 4 * 64 + 64 + 64 * 64 + 64 + 64 * 3 + 3;
  CHECK(param_count(cp) == cpolicy + value + 3);  // + log_std
  CHECK(cp.log_std.isZero());
}
