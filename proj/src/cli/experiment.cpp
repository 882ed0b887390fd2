#include "sarc/cli/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sarc/agents/checkpoint.hpp"
#include "sarc/agents/train_loop.hpp"
#include "sarc/cli/csv.hpp"
#include "sarc/eval/aggregate.hpp"
#include "sarc/eval/evaluate.hpp"

#ifndef SARC_VERSION
#define SARC_VERSION "0.0.0"
#endif

namespace sarc::cli {

const char* const kSeedCsvHeader =
    "env_step,mean_return,std_return,q1_mse,q2_mse,q1_ret,q2_ret,actor_loss,q_error";
const char* const kAggregateCsvHeader = "env_step,mean,std";
const char* const kQErrorCsvHeader = "env_step,q_error";
const char* const kEvalCsvHeader = "env_step,episodes,mean_return,std_return";

std::string build_identifier() {
  std::string id = "sarc-lab " SARC_VERSION;
#if defined(__clang__)
  id += " clang " __clang_version__;
#elif defined(__GNUC__)
  id += " gcc " __VERSION__;
#endif
#ifdef NDEBUG
  id += " release";
#else
  id += " debug";
#endif
  return id;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::size_t parse_count(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw std::invalid_argument("config: '" + key + "' expects a non-negative integer, got '" + v +
                                "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (v.empty() || pos != v.size())
    throw std::invalid_argument("config: '" + key + "' expects a number, got '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(v);
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_tree(const KeyValueTree& tree) {
  ExperimentConfig c;
  if (const auto* alg = tree.find("agent.algorithm"))
    c.agent = agents::AgentConfig::for_algorithm(agents::algorithm_from_string(*alg));

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto count = [](std::size_t& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = parse_count(k, v); };
  };
  auto real = [](double& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = parse_real(k, v); };
  };
  agents::AgentConfig& a = c.agent;
  const std::map<std::string, Setter> setters{
      {"env.name", [&](const std::string&, const std::string& v) { c.env_name = v; }},
      {"env.max_episode_steps",
       [&](const std::string& k, const std::string& v) {
         c.env.max_episode_steps = static_cast<int>(parse_count(k, v));
       }},
      {"agent.algorithm", [](const std::string&, const std::string&) {}},
      {"agent.kappa", real(a.kappa)},
      {"agent.lambda_ret", real(a.lambda_ret)},
      {"agent.alpha", real(a.alpha)},
      {"agent.gamma", real(a.gamma)},
      {"agent.rho", real(a.rho)},
      {"agent.actor_lr", real(a.actor_lr)},
      {"agent.critic_lr", real(a.critic_lr)},
      {"agent.batch_size", count(a.batch_size)},
      {"agent.start_steps", count(a.start_steps)},
      {"agent.update_after", count(a.update_after)},
      {"agent.update_every", count(a.update_every)},
      {"agent.num_updates", count(a.num_updates)},
      {"agent.critic_updates_per_actor_update", count(a.critic_updates_per_actor_update)},
      {"agent.policy_delay", count(a.policy_delay)},
      {"agent.target_noise_std", real(a.target_noise_std)},
      {"agent.target_noise_clip", real(a.target_noise_clip)},
      {"agent.exploration_noise_std", real(a.exploration_noise_std)},
      {"agent.hidden_sizes",
       [&](const std::string& k, const std::string& v) {
         a.hidden_sizes.clear();
         for (const auto& item : split_list(v))
           a.hidden_sizes.push_back(static_cast<int>(parse_count(k, item)));
       }},
      {"agent.replay_capacity", count(a.replay_capacity)},
      {"run.seeds",
       [&](const std::string& k, const std::string& v) {
         c.seeds.clear();
         for (const auto& item : split_list(v)) c.seeds.push_back(parse_count(k, item));
       }},
      {"run.total_steps", count(c.total_steps)},
      {"run.eval_interval", count(c.eval_interval)},
      {"run.eval_episodes", count(c.eval_episodes)},
      {"run.checkpoint_interval", count(c.checkpoint_interval)},
      {"run.qerror_interval", count(c.qerror_interval)},
      {"run.qerror_episodes", count(c.qerror_episodes)},
      {"run.output_dir", [&](const std::string&, const std::string& v) { c.output_dir = v; }},
      {"run.jobs", count(c.jobs)},
  };

  for (const auto& [key, value] : tree.entries()) {
    if (key.rfind("manifest.", 0) == 0) continue;
    auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument("config: unknown key '" + key + "'");
    it->second(key, value);
  }
  c.validate();
  return c;
}

KeyValueTree ExperimentConfig::to_tree() const {
  KeyValueTree t;
  const auto& a = agent;
  t.set("env.name", env_name);
  t.set("env.max_episode_steps", std::to_string(env.max_episode_steps));
  t.set("agent.algorithm", std::string(agents::to_string(a.algorithm)));
  t.set("agent.kappa", format_number(a.kappa));
  t.set("agent.lambda_ret", format_number(a.lambda_ret));
  t.set("agent.alpha", format_number(a.alpha));
  t.set("agent.gamma", format_number(a.gamma));
  t.set("agent.rho", format_number(a.rho));
  t.set("agent.actor_lr", format_number(a.actor_lr));
  t.set("agent.critic_lr", format_number(a.critic_lr));
  t.set("agent.batch_size", std::to_string(a.batch_size));
  t.set("agent.start_steps", std::to_string(a.start_steps));
  t.set("agent.update_after", std::to_string(a.update_after));
  t.set("agent.update_every", std::to_string(a.update_every));
  t.set("agent.num_updates", std::to_string(a.num_updates));
  t.set("agent.critic_updates_per_actor_update", std::to_string(a.critic_updates_per_actor_update));
  t.set("agent.policy_delay", std::to_string(a.policy_delay));
  t.set("agent.target_noise_std", format_number(a.target_noise_std));
  t.set("agent.target_noise_clip", format_number(a.target_noise_clip));
  t.set("agent.exploration_noise_std", format_number(a.exploration_noise_std));
  t.set("agent.hidden_sizes", join(a.hidden_sizes));
  t.set("agent.replay_capacity", std::to_string(a.replay_capacity));
  t.set("run.seeds", join(seeds));
  t.set("run.total_steps", std::to_string(total_steps));
  t.set("run.eval_interval", std::to_string(eval_interval));
  t.set("run.eval_episodes", std::to_string(eval_episodes));
  t.set("run.checkpoint_interval", std::to_string(checkpoint_interval));
  t.set("run.qerror_interval", std::to_string(qerror_interval));
  t.set("run.qerror_episodes", std::to_string(qerror_episodes));
  t.set("run.output_dir", output_dir.string());
  t.set("run.jobs", std::to_string(jobs));
  return t;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
  envs::make_env(env_name, env);  // rejects unknown names
  agent.validate();
  if (seeds.empty()) fail("run.seeds must be non-empty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
    fail("run.seeds must be distinct");
  if (eval_interval == 0) fail("run.eval_interval must be >= 1");
  if (eval_episodes == 0) fail("run.eval_episodes must be >= 1");
  if (qerror_interval % eval_interval != 0)
    fail("run.qerror_interval must be a multiple of run.eval_interval");
  if (qerror_interval > 0 && qerror_episodes == 0) fail("run.qerror_episodes must be >= 1");
  if (jobs == 0) fail("run.jobs must be >= 1");
}

SeedOutcome run_seed(const ExperimentConfig& config, std::uint64_t seed) {
  SeedOutcome outcome;
  outcome.seed = seed;
  namespace fs = std::filesystem;
  const fs::path csv_path = config.output_dir / ("seed_" + std::to_string(seed) + ".csv");
  const fs::path ckpt_dir = config.output_dir / "checkpoints" / ("seed_" + std::to_string(seed));

  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
  outcome.files.push_back(csv_path);
  csv << kSeedCsvHeader << '\n';
  csv.flush();

  try {
    auto env = envs::make_env(config.env_name, config.env);
    const auto eval_env = env->clone();
    Rng init_rng = Rng::stream(seed, kInitStream);
    Rng train_rng = Rng::stream(seed, kTrainStream);
    Rng reset_rng = Rng::stream(seed, kResetStream);
    auto agent = agents::make_agent(config.agent, env->spec(), init_rng);
    replay::ReplayBuffer buffer(env->spec().obs_dim, env->spec().act_dim,
                                config.agent.replay_capacity);

    agents::TrainHooks hooks;
    hooks.on_step = [&](std::size_t step, agents::Agent& ag) {
      if (config.checkpoint_interval > 0 && step % config.checkpoint_interval == 0) {
        fs::create_directories(ckpt_dir);
        const fs::path p = ckpt_dir / ("step_" + std::to_string(step) + ".ckpt");
        agents::save_checkpoint(p, agents::Checkpoint::capture(ag, step));
        outcome.files.push_back(p);
      }
    };
    hooks.on_interval = [&](std::size_t step, const agents::IntervalLosses& losses,
                            agents::Agent& ag) {
      Rng eval_rng = Rng::stream(seed, kEvalStream);
      const eval::EvalRecord rec =
          eval::evaluate_policy(*eval_env, ag, config.eval_episodes, eval_rng, step);
      std::vector<std::string> row{std::to_string(step), format_number(rec.mean_return),
                                   format_number(rec.std_return)};
      if (losses.updates > 0) {
        for (double v : {losses.q1_mse, losses.q2_mse, losses.q1_ret, losses.q2_ret})
          row.push_back(format_number(v));
      } else {
        row.insert(row.end(), 4, "");
      }
      row.push_back(losses.actor_updates > 0 ? format_number(losses.actor_loss) : "");
      if (config.qerror_interval > 0 && step % config.qerror_interval == 0) {
        Rng q_rng = Rng::stream(seed, kQErrorStream);
        row.push_back(format_number(
            eval::q_error(*eval_env, ag, config.agent.gamma, config.qerror_episodes, q_rng, step)
                .q_error));
      } else {
        row.push_back("");
      }
      write_csv_row(csv, row);
      csv.flush();
    };

    agents::TrainOptions options;
    options.total_steps = config.total_steps;
    options.report_interval = config.eval_interval;
    agents::train_loop(*env, *agent, buffer, options, train_rng, reset_rng, hooks);
    outcome.ok = true;
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.error = e.what();
  }
  csv.flush();
  return outcome;
}

namespace {

void write_aggregate(const std::filesystem::path& path, const std::vector<SeedOutcome>& seeds,
                     const std::string& column) {
  std::vector<eval::Curve> curves;
  for (const auto& s : seeds) {
    if (!s.ok) continue;
    const CsvTable table = read_csv(s.files.front());
    curves.push_back(table.curve("env_step", column));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kAggregateCsvHeader << '\n';
  if (curves.empty()) return;
  const eval::CurveAggregate agg = eval::aggregate_seeds(curves);
  for (std::size_t i = 0; i < agg.env_steps.size(); ++i)
    write_csv_row(out, {std::to_string(agg.env_steps[i]), format_number(agg.mean[i]),
                        format_number(agg.std[i])});
}

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& config,
                    const std::string& started, const std::string& finished,
                    const std::string& status, const std::vector<SeedOutcome>& seeds,
                    const std::vector<std::filesystem::path>& files) {
  KeyValueTree t;
  t.set("manifest.build", build_identifier());
  t.set("manifest.started", started);
  t.set("manifest.finished", finished);
  t.set("manifest.status", status);
  const auto env = envs::make_env(config.env_name, config.env);
  for (const auto& [k, v] : env->describe()) t.set("manifest.env." + k, v);
  for (const auto& s : seeds)
    t.set("manifest.seeds." + std::to_string(s.seed), s.ok ? "ok" : "failed: " + s.error);
  for (std::size_t i = 0; i < files.size(); ++i)
    t.set("manifest.files.f" + std::to_string(i),
          std::filesystem::relative(files[i], config.output_dir).generic_string());
  const KeyValueTree resolved = config.to_tree();
  for (const auto& [k, v] : resolved.entries()) t.set(k, v);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# sarc-lab run manifest; feed back with `sarc train --config` to reproduce\n";
  t.write(out);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);
  const fs::path manifest = config.output_dir / "manifest.txt";
  const std::string started = timestamp_utc();

  ExperimentResult result;
  result.seeds.resize(config.seeds.size());
  write_manifest(manifest, config, started, "", "running", {}, {manifest});

  // Seeds are independent; workers share only the read-only config.
  std::size_t next = 0;
  std::mutex next_mutex;
  auto worker = [&]() {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= config.seeds.size()) return;
        i = next++;
      }
      try {
        result.seeds[i] = run_seed(config, config.seeds[i]);
      } catch (const std::exception& e) {
        result.seeds[i].seed = config.seeds[i];
        result.seeds[i].ok = false;
        result.seeds[i].error = e.what();
      }
    }
  };
  const std::size_t n_workers = std::min(config.jobs, config.seeds.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& s : result.seeds)
    result.files.insert(result.files.end(), s.files.begin(), s.files.end());
  const fs::path agg = config.output_dir / "aggregate.csv";
  write_aggregate(agg, result.seeds, "mean_return");
  result.files.push_back(agg);
  if (config.qerror_interval > 0) {
    const fs::path aggq = config.output_dir / "aggregate_qerror.csv";
    write_aggregate(aggq, result.seeds, "q_error");
    result.files.push_back(aggq);
  }
  result.files.push_back(manifest);

  const bool all_ok = std::all_of(result.seeds.begin(), result.seeds.end(),
                                  [](const SeedOutcome& s) { return s.ok; });
  write_manifest(manifest, config, started, timestamp_utc(), all_ok ? "complete" : "partial",
                 result.seeds, result.files);
  return result;
}

}  // namespace sarc::cli
