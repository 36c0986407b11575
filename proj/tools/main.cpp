// clipppo command line: train one PPO run or compare the three clipping
// schedules across seeds.
//
//   clipppo train   --env cartpole --clip-schedule linear --seed 1 --out runs/lin1
//   clipppo compare --preset acrobot-desk --seeds 3 --out runs/acrobot_cmp

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <string>

#include "clipppo/checkpoint.hpp"
#include "clipppo/harness.hpp"

namespace {

std::string current_git_hash() {
  std::array<char, 64> buffer{};
  FILE* pipe = popen("git rev-parse --short HEAD 2>/dev/null", "r");
  if (pipe == nullptr) return "unknown";
  std::string out;
  if (fgets(buffer.data(), buffer.size(), pipe) != nullptr) out = buffer.data();
  pclose(pipe);
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out.empty() ? "unknown" : out;
}

std::string current_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buffer;
}

struct CommonFlags {
  std::string config_file;
  std::string preset;
  std::string env;
  std::string schedule;
  double eps0 = -1.0;
  double alpha = -1.0;
  long long total_timesteps = -1;
  int n_envs = -1;
  long long seed = -1;
  double learning_rate = -1.0;
  int epochs = -1;
  int minibatch = -1;
  int rollout_len = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_file, "JSON config file (flags override file keys)");
  cmd->add_option("--preset", flags.preset, "named budget preset, e.g. cartpole-paper, acrobot-desk");
  cmd->add_option("--env", flags.env, "environment id: cartpole|pendulum|acrobot");
  cmd->add_option("--clip-schedule", flags.schedule, "clip schedule: constant|linear|exp");
  cmd->add_option("--clip-eps0", flags.eps0, "initial clipping range");
  cmd->add_option("--clip-alpha", flags.alpha, "exponential decay base");
  cmd->add_option("--total-timesteps", flags.total_timesteps, "training budget in env steps");
  cmd->add_option("--n-envs", flags.n_envs, "parallel environments");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--learning-rate", flags.learning_rate, "Adam learning rate");
  cmd->add_option("--epochs", flags.epochs, "optimization epochs per iteration");
  cmd->add_option("--minibatch", flags.minibatch, "minibatch size");
  cmd->add_option("--rollout-len", flags.rollout_len, "steps per env per iteration");
}

std::map<std::string, std::string> to_overrides(const CommonFlags& flags) {
  std::map<std::string, std::string> o;
  if (!flags.preset.empty()) o["preset"] = flags.preset;
  if (!flags.env.empty()) o["env"] = flags.env;
  if (!flags.schedule.empty()) o["clip_schedule"] = flags.schedule;
  if (flags.eps0 >= 0.0) o["clip_eps0"] = std::to_string(flags.eps0);
  if (flags.alpha >= 0.0) o["clip_alpha"] = std::to_string(flags.alpha);
  if (flags.total_timesteps >= 0) o["total_timesteps"] = std::to_string(flags.total_timesteps);
  if (flags.n_envs >= 0) o["n_envs"] = std::to_string(flags.n_envs);
  if (flags.seed >= 0) o["seed"] = std::to_string(flags.seed);
  if (flags.learning_rate >= 0.0) o["learning_rate"] = std::to_string(flags.learning_rate);
  if (flags.epochs >= 0) o["epochs"] = std::to_string(flags.epochs);
  if (flags.minibatch >= 0) o["minibatch"] = std::to_string(flags.minibatch);
  if (flags.rollout_len >= 0) o["rollout_len"] = std::to_string(flags.rollout_len);
  return o;
}

clipppo::harness::RunConfig resolve(const CommonFlags& flags) {
  using namespace clipppo::harness;
  const auto overrides = to_overrides(flags);
  RunConfig cfg = flags.config_file.empty() ? parse_config("", overrides)
                                            : parse_config_file(flags.config_file, overrides);
  cfg.git_hash = current_git_hash();
  cfg.timestamp = current_timestamp();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PPO training engine with scheduled clipping ranges"};
  app.require_subcommand(1);

  CommonFlags train_flags;
  std::string train_out;
  std::string save_params;
  auto* train = app.add_subcommand("train", "run one training configuration");
  add_common(train, train_flags);
  train->add_option("--out", train_out, "output directory")->required();
  train->add_option("--save-params", save_params, "write the final parameters to this checkpoint file");

  CommonFlags cmp_flags;
  std::string cmp_out;
  int cmp_seeds = 3;
  int cmp_jobs = 0;
  auto* cmp = app.add_subcommand("compare", "run constant vs linear vs exp across seeds");
  add_common(cmp, cmp_flags);
  cmp->add_option("--out", cmp_out, "output directory")->required();
  cmp->add_option("--seeds", cmp_seeds, "seeds per schedule (consecutive from --seed)");
  cmp->add_option("--jobs", cmp_jobs, "parallel runs (default: hardware concurrency)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      auto cfg = resolve(train_flags);
      cfg.out_dir = train_out;
      clipppo::nn::PolicyParams final_params;
      const auto summary =
          clipppo::harness::run(cfg, save_params.empty() ? nullptr : &final_params);
      if (!save_params.empty()) {
        clipppo::nn::save_checkpoint(save_params, final_params);
        std::cout << "checkpoint written to " << save_params << "\n";
      }
      std::cout << "avg_reward_all_training " << summary.avg_reward_all_training << "\n"
                << "avg_reward_last100 " << summary.avg_reward_last100 << "\n"
                << "episodes_completed " << summary.episodes_completed << "\n"
                << "artifacts in " << cfg.out_dir << "\n";
    } else if (cmp->parsed()) {
      auto base = resolve(cmp_flags);
      const auto table = clipppo::harness::compare(clipppo::harness::schedule_variants(base),
                                                   cmp_seeds, cmp_out, cmp_jobs);
      std::cout << "schedule            avg_all(mean+-std)        last100(mean+-std)\n";
      for (const auto& s : table.schedules) {
        std::printf("%-10s %14.2f +- %-10.2f %12.2f +- %-10.2f\n", s.schedule.c_str(),
                    s.avg_all_mean, s.avg_all_std, s.last100_mean, s.last100_std);
      }
      std::cout << "artifacts in " << cmp_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
