#include "sarc/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "sarc/agents/checkpoint.hpp"
#include "sarc/cli/csv.hpp"
#include "sarc/cli/svg_plot.hpp"

namespace sarc::cli {

namespace {

std::unique_ptr<envs::Env> env_for(const agents::Checkpoint& ckpt, const std::string& env_name) {
  envs::EnvConfig config;
  if (env_name.empty() || env_name == ckpt.env_name)
    config.max_episode_steps = ckpt.env_spec.max_episode_steps;
  auto env = envs::make_env(env_name.empty() ? ckpt.env_name : env_name, config);
  const auto& spec = env->spec();
  if (spec.obs_dim != ckpt.env_spec.obs_dim || spec.act_dim != ckpt.env_spec.act_dim)
    throw std::runtime_error("environment '" + spec.name +
                             "' does not match the checkpoint's dimensions");
  return env;
}

}  // namespace

ExperimentConfig resolve_config(const std::optional<std::filesystem::path>& config_file,
                                const Overrides& overrides) {
  KeyValueTree tree = config_file ? KeyValueTree::parse_file(*config_file) : KeyValueTree{};
  for (const auto& [k, v] : overrides) {
    if (!valid_key(k)) throw std::invalid_argument("override: bad key '" + k + "'");
    tree.set(k, v);
  }
  return ExperimentConfig::from_tree(tree);
}

ExperimentResult cmd_train(const std::optional<std::filesystem::path>& config_file,
                           const Overrides& overrides) {
  return run_experiment(resolve_config(config_file, overrides));
}

eval::EvalRecord cmd_eval(const std::filesystem::path& checkpoint, const std::string& env_name,
                          std::size_t episodes, std::uint64_t seed, std::ostream& csv) {
  if (episodes == 0) throw std::invalid_argument("eval: episodes must be >= 1");
  const auto ckpt = agents::load_checkpoint(checkpoint);
  auto env = env_for(ckpt, env_name);
  const auto agent = agents::restore_agent(ckpt);
  Rng rng = Rng::stream(seed, kEvalStream);
  const auto rec = eval::evaluate_policy(*env, *agent, episodes, rng, ckpt.env_step);
  csv << kEvalCsvHeader << '\n';
  write_csv_row(csv, {std::to_string(rec.env_step), std::to_string(episodes),
                      format_number(rec.mean_return), format_number(rec.std_return)});
  return rec;
}

std::vector<eval::QErrorRecord> cmd_qerror(const std::filesystem::path& dir,
                                           const std::string& env_name, double gamma,
                                           std::size_t episodes, std::uint64_t seed,
                                           std::ostream& csv) {
  if (episodes == 0) throw std::invalid_argument("qerror: episodes must be >= 1");
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("qerror: not a directory: " + dir.string());
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".ckpt")
      paths.push_back(entry.path());
  if (paths.empty()) throw std::runtime_error("qerror: no checkpoints in " + dir.string());

  std::vector<eval::QErrorRecord> records;
  for (const auto& p : paths) {
    const auto ckpt = agents::load_checkpoint(p);
    auto env = env_for(ckpt, env_name);
    const auto agent = agents::restore_agent(ckpt);
    Rng rng = Rng::stream(seed, kQErrorStream);
    records.push_back(eval::q_error(*env, *agent, gamma, episodes, rng, ckpt.env_step));
  }
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.env_step < b.env_step; });
  csv << kQErrorCsvHeader << '\n';
  for (const auto& r : records)
    write_csv_row(csv, {std::to_string(r.env_step), format_number(r.q_error)});
  return records;
}

void cmd_plot(const std::vector<std::filesystem::path>& csvs,
              const std::vector<std::string>& labels, const std::filesystem::path& out_svg) {
  if (csvs.empty()) throw std::invalid_argument("plot: at least one csv is required");
  if (!labels.empty() && labels.size() != csvs.size())
    throw std::invalid_argument("plot: need one label per csv");
  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < csvs.size(); ++i) {
    const CsvTable t = read_csv(csvs[i]);
    const bool aggregate = std::find(t.header.begin(), t.header.end(), "mean") != t.header.end();
    const std::string mean_col = aggregate ? "mean" : "mean_return";
    const std::string std_col = aggregate ? "std" : "std_return";
    PlotSeries s;
    s.label = labels.empty() ? csvs[i].stem().string() : labels[i];
    const auto xs = t.numbers("env_step");
    s.x.assign(xs.begin(), xs.end());
    s.mean = t.numbers(mean_col);
    s.std = t.numbers(std_col);
    if (s.x.empty()) throw std::runtime_error("plot: " + csvs[i].string() + " has no rows");
    series.push_back(std::move(s));
  }
  std::ofstream out(out_svg, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_svg.string());
  write_svg_plot(out, series);
}

}  // namespace sarc::cli
