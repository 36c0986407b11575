#include <benchmark/benchmark.h>

#include "clipppo/env.hpp"
#include "clipppo/vec_env.hpp"

using namespace clipppo::envs;

static void BM_CartPoleStep(benchmark::State& state) {
  auto env = make_env("cartpole");
  env->reset(1);
  int a = 0;
  for (auto _ : state) {
    const auto r = env->step(a);
    a ^= 1;
    if (done(r)) env->reset();
    benchmark::DoNotOptimize(r.reward);
  }
}
BENCHMARK(BM_CartPoleStep);

static void BM_PendulumStep(benchmark::State& state) {
  auto env = make_env("pendulum");
  env->reset(1);
  const Eigen::VectorXd torque = Eigen::VectorXd::Constant(1, 1.0);
  for (auto _ : state) {
    const auto r = env->step(torque);
    if (done(r)) env->reset();
    benchmark::DoNotOptimize(r.reward);
  }
}
BENCHMARK(BM_PendulumStep);

static void BM_AcrobotStep(benchmark::State& state) {
  auto env = make_env("acrobot");
  env->reset(1);
  for (auto _ : state) {
    const auto r = env->step(2);
    if (done(r)) env->reset();
    benchmark::DoNotOptimize(r.reward);
  }
}
BENCHMARK(BM_AcrobotStep);

static void BM_VecEnvStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  VecEnv vec("cartpole", n);
  vec.reset(1);
  std::vector<Action> actions(static_cast<std::size_t>(n), Action(0));
  for (auto _ : state) {
    const auto out = vec.step(actions);
    benchmark::DoNotOptimize(out.rewards.sum());
    vec.drain_episodes();
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_VecEnvStep)->Arg(8)->Arg(16);
