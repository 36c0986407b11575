#include <benchmark/benchmark.h>

#include "clipppo/adam.hpp"
#include "clipppo/policy.hpp"
#include "clipppo/ppo.hpp"
#include "clipppo/rng.hpp"

using namespace clipppo;

namespace {

envs::EnvSpec cartpole_like() {
  envs::EnvSpec spec;
  spec.name = "bench";
  spec.obs_dim = 4;
  spec.action.kind = envs::ActionKind::discrete;
  spec.action.n = 2;
  spec.max_episode_steps = 500;
  return spec;
}

ppo::BatchSlice bench_slice(const nn::PolicyParams& params, int batch) {
  Rng rng(7);
  ppo::BatchSlice slice;
  slice.continuous = false;
  slice.obs = Eigen::MatrixXd::Zero(batch, 4);
  for (Eigen::Index i = 0; i < slice.obs.size(); ++i) slice.obs.data()[i] = rng.normal();
  slice.actions_d.assign(static_cast<std::size_t>(batch), 0);
  Eigen::VectorXd lp, ent;
  const Eigen::MatrixXd out = params.policy_net.forward(slice.obs);
  nn::logprob_entropy(params, out, slice.actions_d, {}, lp, ent);
  slice.old_log_probs = lp;
  slice.advantages = Eigen::VectorXd::Ones(batch);
  slice.returns = Eigen::VectorXd::Zero(batch);
  return slice;
}

}  // namespace

static void BM_PolicyForward(benchmark::State& state) {
  const nn::PolicyParams params = nn::make_policy(cartpole_like(), 1);
  const Eigen::MatrixXd obs = Eigen::MatrixXd::Random(state.range(0), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(params.policy_net.forward(obs).sum());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PolicyForward)->Arg(8)->Arg(64)->Arg(2048);

static void BM_LossAndGrads(benchmark::State& state) {
  const nn::PolicyParams params = nn::make_policy(cartpole_like(), 1);
  const ppo::BatchSlice slice = bench_slice(params, static_cast<int>(state.range(0)));
  nn::Grads grads;
  for (auto _ : state) {
    const auto report = ppo::loss_and_grads(params, slice, 0.2, 0.5, 0.0, grads);
    benchmark::DoNotOptimize(report.total);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LossAndGrads)->Arg(64)->Arg(256);

static void BM_AdamStep(benchmark::State& state) {
  nn::PolicyParams params = nn::make_policy(cartpole_like(), 1);
  nn::AdamState adam(params, {});
  const ppo::BatchSlice slice = bench_slice(params, 64);
  nn::Grads grads;
  ppo::loss_and_grads(params, slice, 0.2, 0.5, 0.0, grads);
  for (auto _ : state) {
    adam.step(params, grads);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nn::param_count(params)));
}
BENCHMARK(BM_AdamStep);
