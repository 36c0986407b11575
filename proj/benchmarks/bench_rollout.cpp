#include <benchmark/benchmark.h>

#include "clipppo/policy.hpp"
#include "clipppo/rollout.hpp"
#include "clipppo/rng.hpp"
#include "clipppo/vec_env.hpp"

using namespace clipppo;

static void BM_Collect2048(benchmark::State& state) {
  envs::VecEnv env("cartpole", 8);
  env.reset(derive_seed(1, "envs"));
  const nn::PolicyParams params = nn::make_policy(env.spec(), derive_seed(1, "init"));
  Rng action_rng(derive_seed(1, "actions"));
  rollout::EpisodeStats stats;
  for (auto _ : state) {
    const auto batch = rollout::collect(params, env, 256, action_rng, stats, nullptr, 0.99);
    benchmark::DoNotOptimize(batch.rewards.sum());
  }
  state.SetItemsProcessed(state.iterations() * 2048);
}
BENCHMARK(BM_Collect2048);

static void BM_Gae(benchmark::State& state) {
  Rng rng(3);
  const int n_envs = 8, steps = 256;
  const int rows = n_envs * steps;
  Eigen::VectorXd rewards(rows), values(rows), bootstrap(n_envs), adv, ret;
  std::vector<std::uint8_t> dones(static_cast<std::size_t>(rows), 0);
  for (int i = 0; i < rows; ++i) {
    rewards[i] = rng.normal();
    values[i] = rng.normal();
    if (rng.uniform() < 0.01) dones[static_cast<std::size_t>(i)] = 1;
  }
  for (int i = 0; i < n_envs; ++i) bootstrap[i] = rng.normal();
  for (auto _ : state) {
    rollout::compute_gae(rewards, values, dones, bootstrap, n_envs, 0.99, 0.95, adv, ret);
    benchmark::DoNotOptimize(adv.sum());
  }
  state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(BM_Gae);

static void BM_MinibatchShuffle(benchmark::State& state) {
  Rng rng(5);
  for (auto _ : state) {
    const auto slices = rollout::minibatches(2048, 64, rng);
    benchmark::DoNotOptimize(slices.size());
  }
}
BENCHMARK(BM_MinibatchShuffle);
