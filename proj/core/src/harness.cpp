#include "clipppo/harness.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "clipppo/csv.hpp"
#include "clipppo/errors.hpp"

namespace clipppo::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum class KeyType { string_t, integer_t, number_t, boolean_t };

const std::map<std::string, KeyType>& config_keys() {
  static const std::map<std::string, KeyType> keys = {
      {"env", KeyType::string_t},          {"preset", KeyType::string_t},
      {"seed", KeyType::integer_t},        {"n_envs", KeyType::integer_t},
      {"total_timesteps", KeyType::integer_t}, {"rollout_len", KeyType::integer_t},
      {"epochs", KeyType::integer_t},      {"minibatch", KeyType::integer_t},
      {"value_coef", KeyType::number_t},   {"entropy_coef", KeyType::number_t},
      {"gamma", KeyType::number_t},        {"gae_lambda", KeyType::number_t},
      {"learning_rate", KeyType::number_t}, {"grad_norm_cap", KeyType::number_t},
      {"normalize_advantages", KeyType::boolean_t},
      {"clip_schedule", KeyType::string_t}, {"clip_eps0", KeyType::number_t},
      {"clip_alpha", KeyType::number_t},
  };
  return keys;
}

void assign_key(RunConfig& cfg, const std::string& key, const json& value) {
  auto expect = [&](bool ok, const char* want) {
    if (!ok)
      throw UsageError("config key '" + key + "': expected " + want + ", got " + value.dump());
  };
  const KeyType type = config_keys().at(key);
  switch (type) {
    case KeyType::string_t:
      expect(value.is_string(), "a string");
      break;
    case KeyType::integer_t:
      expect(value.is_number_integer(), "an integer");
      break;
    case KeyType::number_t:
      expect(value.is_number(), "a number");
      break;
    case KeyType::boolean_t:
      expect(value.is_boolean(), "a boolean");
      break;
  }

  if (key == "env") cfg.env_id = value.get<std::string>();
  else if (key == "preset") apply_preset(cfg, value.get<std::string>());
  else if (key == "seed") cfg.ppo.seed = value.get<std::uint64_t>();
  else if (key == "n_envs") cfg.ppo.n_envs = value.get<int>();
  else if (key == "total_timesteps") cfg.ppo.total_timesteps = value.get<std::int64_t>();
  else if (key == "rollout_len") cfg.ppo.rollout_len = value.get<int>();
  else if (key == "epochs") cfg.ppo.epochs = value.get<int>();
  else if (key == "minibatch") cfg.ppo.minibatch = value.get<int>();
  else if (key == "value_coef") cfg.ppo.value_coef = value.get<double>();
  else if (key == "entropy_coef") cfg.ppo.entropy_coef = value.get<double>();
  else if (key == "gamma") cfg.ppo.gamma = value.get<double>();
  else if (key == "gae_lambda") cfg.ppo.gae_lambda = value.get<double>();
  else if (key == "learning_rate") cfg.ppo.learning_rate = value.get<double>();
  else if (key == "grad_norm_cap") cfg.ppo.grad_norm_cap = value.get<double>();
  else if (key == "normalize_advantages") cfg.ppo.normalize_advantages = value.get<bool>();
  else if (key == "clip_schedule")
    cfg.ppo.schedule.kind = schedules::parse_schedule_kind(value.get<std::string>());
  else if (key == "clip_eps0") cfg.ppo.schedule.eps0 = value.get<double>();
  else if (key == "clip_alpha") cfg.ppo.schedule.alpha = value.get<double>();
}

json override_to_json(const std::string& key, const std::string& text) {
  const auto it = config_keys().find(key);
  if (it == config_keys().end()) throw UsageError("unknown config key '" + key + "'");
  try {
    switch (it->second) {
      case KeyType::string_t: return json(text);
      case KeyType::integer_t: return json(std::stoll(text));
      case KeyType::number_t: return json(std::stod(text));
      case KeyType::boolean_t:
        if (text == "true" || text == "1") return json(true);
        if (text == "false" || text == "0") return json(false);
        throw std::invalid_argument("not a boolean");
    }
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': cannot parse value '" + text + "'");
  }
  return {};
}

std::string metrics_header() {
  return "# clipppo metrics schema v1; clip_fraction, losses and grad_norm are means over all "
         "K*ceil(NT/M) minibatch updates of the iteration; wall_ms is excluded from determinism "
         "comparisons\n"
         "iteration,timesteps,epsilon,clip_fraction,surrogate_loss,value_loss,entropy,"
         "mean_ep_return_last100,episodes_completed,grad_norm,wall_ms\n";
}

std::string episodes_header() {
  return "# clipppo episodes schema v1; one row per completed episode, credited to the iteration "
         "in which it ended\n"
         "episode,iteration,slot,return,length\n";
}

void write_metrics_row(std::ofstream& out, const ppo::MetricsRow& row) {
  out << row.iteration << ',' << row.timesteps << ',' << format_double(row.epsilon) << ','
      << format_double(row.clip_fraction) << ',' << format_double(row.surrogate_loss) << ','
      << format_double(row.value_loss) << ',' << format_double(row.entropy) << ','
      << format_double(row.mean_ep_return_last100) << ',' << row.episodes_completed << ','
      << format_double(row.grad_norm) << ',' << format_double(row.wall_ms) << '\n';
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = mean_of(xs);
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"cartpole-paper", "pendulum-paper", "acrobot-paper",
          "cartpole-desk", "pendulum-desk", "acrobot-desk"};
}

void apply_preset(RunConfig& config, const std::string& name) {
  if (name == "cartpole-paper" || name == "cartpole-desk") {
    config.env_id = "cartpole";
    config.ppo.total_timesteps = 100000;
    config.ppo.n_envs = 8;
  } else if (name == "pendulum-paper") {
    config.env_id = "pendulum";
    config.ppo.total_timesteps = 2000000;
    config.ppo.n_envs = 8;
  } else if (name == "pendulum-desk") {
    config.env_id = "pendulum";
    config.ppo.total_timesteps = 500000;
    config.ppo.n_envs = 8;
  } else if (name == "acrobot-paper") {
    config.env_id = "acrobot";
    config.ppo.total_timesteps = 1000000;
    config.ppo.n_envs = 16;
  } else if (name == "acrobot-desk") {
    config.env_id = "acrobot";
    config.ppo.total_timesteps = 300000;
    config.ppo.n_envs = 16;
  } else {
    throw UsageError("unknown preset '" + name + "'");
  }
}

RunConfig parse_config(const std::string& json_text, const std::map<std::string, std::string>& overrides) {
  json j = json::object();
  if (!json_text.empty()) {
    try {
      j = json::parse(json_text);
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config root must be a JSON object");
  }

  RunConfig cfg;

  // Precedence: defaults, then preset (override wins over file), then file
  // keys, then CLI overrides.
  const auto preset_override = overrides.find("preset");
  if (preset_override != overrides.end())
    apply_preset(cfg, preset_override->second);
  else if (j.contains("preset"))
    assign_key(cfg, "preset", j.at("preset"));

  for (const auto& [key, value] : j.items()) {
    if (config_keys().find(key) == config_keys().end())
      throw UsageError("unknown config key '" + key + "'");
    if (key == "preset") continue;
    assign_key(cfg, key, value);
  }
  for (const auto& [key, text] : overrides) {
    if (key == "preset") continue;
    assign_key(cfg, key, override_to_json(key, text));
  }

  ppo::validate(cfg.ppo);
  return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::map<std::string, std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw UsageError("config file '" + path + "' does not exist");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  // A whitespace-only file means full defaults.
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) text.clear();
  return parse_config(text, overrides);
}

std::string config_to_json(const RunConfig& config) {
  json j;
  j["env"] = config.env_id;
  j["seed"] = config.ppo.seed;
  j["n_envs"] = config.ppo.n_envs;
  j["total_timesteps"] = config.ppo.total_timesteps;
  j["rollout_len"] = config.ppo.rollout_len;
  j["epochs"] = config.ppo.epochs;
  j["minibatch"] = config.ppo.minibatch;
  j["value_coef"] = config.ppo.value_coef;
  j["entropy_coef"] = config.ppo.entropy_coef;
  j["gamma"] = config.ppo.gamma;
  j["gae_lambda"] = config.ppo.gae_lambda;
  j["learning_rate"] = config.ppo.learning_rate;
  j["grad_norm_cap"] = config.ppo.grad_norm_cap;
  j["normalize_advantages"] = config.ppo.normalize_advantages;
  j["clip_schedule"] = schedules::to_string(config.ppo.schedule.kind);
  j["clip_eps0"] = config.ppo.schedule.eps0;
  j["clip_alpha"] = config.ppo.schedule.alpha;
  j["metadata"] = {{"git_hash", config.git_hash}, {"timestamp", config.timestamp}};
  return j.dump(2) + "\n";
}

RunSummary run(const RunConfig& config, nn::PolicyParams* final_params) {
  ppo::validate(config.ppo);
  if (config.out_dir.empty()) throw UsageError("run: output directory not set");
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw UsageError("run: cannot create output directory '" + config.out_dir + "': " + ec.message());

  {
    std::ofstream echo(fs::path(config.out_dir) / "config.json");
    if (!echo) throw UsageError("run: cannot write config echo");
    echo << config_to_json(config);
  }

  std::ofstream metrics(fs::path(config.out_dir) / "metrics.csv");
  std::ofstream episodes(fs::path(config.out_dir) / "episodes.csv");
  if (!metrics || !episodes) throw UsageError("run: cannot open output csv files");
  metrics << metrics_header();
  episodes << episodes_header();

  envs::VecEnv env(config.env_id, config.ppo.n_envs);
  ppo::Trainer trainer(config.ppo, env);

  std::int64_t episode_counter = 0;
  while (!trainer.finished()) {
    ppo::MetricsRow row;
    try {
      row = trainer.train_iteration();
    } catch (...) {
      metrics.flush();
      episodes.flush();
      throw;
    }
    write_metrics_row(metrics, row);
    for (const auto& ep : trainer.drain_episodes()) {
      episodes << ++episode_counter << ',' << row.iteration << ',' << ep.slot << ','
               << format_double(ep.episode_return) << ',' << ep.length << '\n';
    }
    metrics.flush();
    episodes.flush();
  }

  if (final_params != nullptr) *final_params = trainer.params();

  RunSummary summary;
  summary.avg_reward_all_training = trainer.episode_stats().mean_all();
  summary.avg_reward_last100 = trainer.episode_stats().mean_last100();
  summary.episodes_completed = trainer.episode_stats().count();
  summary.total_timesteps = trainer.timesteps();

  json s;
  s["env"] = config.env_id;
  s["clip_schedule"] = schedules::to_string(config.ppo.schedule.kind);
  s["seed"] = config.ppo.seed;
  s["avg_reward_all_training"] = summary.avg_reward_all_training;
  s["avg_reward_last100"] = summary.avg_reward_last100;
  s["episodes_completed"] = summary.episodes_completed;
  s["total_timesteps"] = summary.total_timesteps;
  std::ofstream out(fs::path(config.out_dir) / "summary.json");
  if (!out) throw UsageError("run: cannot write summary.json");
  out << s.dump(2) << "\n";
  return summary;
}

RunSummary load_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open summary '" + path + "'");
  json s = json::parse(in);
  RunSummary summary;
  const auto number_or_nan = [&](const char* key) {
    return s.at(key).is_number() ? s.at(key).get<double>()
                                 : std::numeric_limits<double>::quiet_NaN();
  };
  summary.avg_reward_all_training = number_or_nan("avg_reward_all_training");
  summary.avg_reward_last100 = number_or_nan("avg_reward_last100");
  summary.episodes_completed = s.at("episodes_completed").get<std::int64_t>();
  summary.total_timesteps = s.at("total_timesteps").get<std::int64_t>();
  return summary;
}

ComparisonTable aggregate_comparison(const std::map<std::string, std::vector<RunSummary>>& per_schedule) {
  ComparisonTable table;
  for (const std::string name : {"constant", "linear", "exp"}) {
    const auto it = per_schedule.find(name);
    if (it == per_schedule.end()) continue;
    ScheduleSummary s;
    s.schedule = name;
    s.per_seed = it->second;
    std::vector<double> all, last;
    for (const auto& r : it->second) {
      all.push_back(r.avg_reward_all_training);
      last.push_back(r.avg_reward_last100);
    }
    s.avg_all_mean = mean_of(all);
    s.avg_all_std = sample_std(all);
    s.last100_mean = mean_of(last);
    s.last100_std = sample_std(last);
    table.schedules.push_back(std::move(s));
  }
  return table;
}

std::vector<RunConfig> schedule_variants(const RunConfig& base) {
  std::vector<RunConfig> variants;
  for (auto kind : {schedules::ScheduleKind::constant, schedules::ScheduleKind::linear,
                    schedules::ScheduleKind::exponential}) {
    RunConfig cfg = base;
    cfg.ppo.schedule.kind = kind;
    variants.push_back(std::move(cfg));
  }
  return variants;
}

namespace {

void check_same_but_schedule(const RunConfig& a, const RunConfig& b) {
  const auto& pa = a.ppo;
  const auto& pb = b.ppo;
  const bool same = a.env_id == b.env_id && pa.epochs == pb.epochs && pa.minibatch == pb.minibatch &&
                    pa.value_coef == pb.value_coef && pa.entropy_coef == pb.entropy_coef &&
                    pa.gamma == pb.gamma && pa.gae_lambda == pb.gae_lambda &&
                    pa.learning_rate == pb.learning_rate && pa.grad_norm_cap == pb.grad_norm_cap &&
                    pa.rollout_len == pb.rollout_len && pa.n_envs == pb.n_envs &&
                    pa.total_timesteps == pb.total_timesteps && pa.seed == pb.seed &&
                    pa.normalize_advantages == pb.normalize_advantages &&
                    pa.schedule.eps0 == pb.schedule.eps0;
  if (!same)
    throw UsageError("compare: configs must be identical apart from the clip schedule kind");
}

}  // namespace

ComparisonTable compare(const std::vector<RunConfig>& configs, int seeds, const std::string& out_dir,
                        int jobs) {
  if (configs.empty() || configs.size() > 3) throw UsageError("compare: expected 1 to 3 configs");
  if (seeds < 1) throw UsageError("compare: seeds must be >= 1");
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (std::size_t k = i + 1; k < configs.size(); ++k) {
      if (configs[i].ppo.schedule.kind == configs[k].ppo.schedule.kind)
        throw UsageError("compare: duplicate schedule kind");
      check_same_but_schedule(configs[i], configs[k]);
    }
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw UsageError("compare: cannot create '" + out_dir + "': " + ec.message());

  struct Task {
    RunConfig config;
    std::string schedule;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& base : configs) {
    const std::string name = schedules::to_string(base.ppo.schedule.kind);
    for (int s = 0; s < seeds; ++s) {
      Task task;
      task.config = base;
      task.config.ppo.seed = base.ppo.seed + static_cast<std::uint64_t>(s);
      task.schedule = name;
      task.seed = task.config.ppo.seed;
      task.config.out_dir =
          (fs::path(out_dir) / name / ("seed" + std::to_string(task.seed))).string();
      tasks.push_back(std::move(task));
    }
  }

  // Existing runs are reused untouched; only missing ones execute.
  std::vector<const Task*> to_run;
  for (const auto& task : tasks)
    if (!fs::exists(fs::path(task.config.out_dir) / "summary.json")) to_run.push_back(&task);

  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(to_run.size())));
  if (!to_run.empty()) {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= to_run.size()) return;
        try {
          run(to_run[i]->config);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (first_error.empty()) first_error = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw TrainingError("compare: a run failed: " + first_error);
  }

  std::map<std::string, std::vector<RunSummary>> per_schedule;
  for (const auto& task : tasks)
    per_schedule[task.schedule].push_back(
        load_summary((fs::path(task.config.out_dir) / "summary.json").string()));

  const ComparisonTable table = aggregate_comparison(per_schedule);

  {
    std::ofstream out(fs::path(out_dir) / "comparison.csv");
    out << "# across-seed mean and sample std per schedule (" << seeds << " seed(s))\n";
    out << "metric";
    for (const auto& s : table.schedules) out << ',' << s.schedule << "_mean," << s.schedule << "_std";
    out << '\n';
    out << "avg_reward_all_training";
    for (const auto& s : table.schedules)
      out << ',' << format_double(s.avg_all_mean) << ',' << format_double(s.avg_all_std);
    out << '\n';
    out << "avg_reward_last100";
    for (const auto& s : table.schedules)
      out << ',' << format_double(s.last100_mean) << ',' << format_double(s.last100_std);
    out << '\n';
  }

  {
    json j;
    for (const auto& s : table.schedules) {
      json seeds_json = json::array();
      for (std::size_t i = 0; i < s.per_seed.size(); ++i) {
        const auto& r = s.per_seed[i];
        seeds_json.push_back({{"avg_reward_all_training", r.avg_reward_all_training},
                              {"avg_reward_last100", r.avg_reward_last100},
                              {"episodes_completed", r.episodes_completed}});
      }
      j[s.schedule] = {{"per_seed", seeds_json},
                       {"avg_reward_all_training", {{"mean", s.avg_all_mean}, {"std", s.avg_all_std}}},
                       {"avg_reward_last100", {{"mean", s.last100_mean}, {"std", s.last100_std}}}};
    }
    std::ofstream out(fs::path(out_dir) / "compare.json");
    out << j.dump(2) << "\n";
  }

  {
    std::ofstream out(fs::path(out_dir) / "clip_fractions.csv");
    out << "# merged per-iteration clip fractions of every run, for plotting\n";
    out << "schedule,seed,iteration,timesteps,epsilon,clip_fraction\n";
    for (const auto& task : tasks) {
      const auto rows = read_csv((fs::path(task.config.out_dir) / "metrics.csv").string());
      for (std::size_t i = 1; i < rows.size(); ++i) {  // rows[0] is the column header
        const auto& r = rows[i];
        out << task.schedule << ',' << task.seed << ',' << r[0] << ',' << r[1] << ',' << r[2] << ','
            << r[3] << '\n';
      }
    }
  }

  return table;
}

}  // namespace clipppo::harness
