#include <CLI11.hpp>

#include <fstream>
#include <malloc.h>
#include <iostream>
#include <optional>

#include "sarc/cli/commands.hpp"

namespace {

// Turns leftover "--key value" / "--key=value" arguments into overrides.
sarc::cli::Overrides parse_overrides(const std::vector<std::string>& extras) {
  sarc::cli::Overrides out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0) throw CLI::ValidationError("unexpected argument '" + arg + "'");
    const std::string body = arg.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
    } else if (i + 1 < extras.size()) {
      out.emplace_back(body, extras[++i]);
    } else {
      throw CLI::ValidationError("override '" + arg + "' has no value");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  // Batch activations exceed the default mmap threshold; keep them on the heap.
  mallopt(M_MMAP_THRESHOLD, 256 << 20);
  mallopt(M_TRIM_THRESHOLD, 256 << 20);

  CLI::App app{"sarc: actor-critic lab (SAC, SARC, delayed SAC, TD3, DDPG)"};
  app.require_subcommand(1);

  auto* train = app.add_subcommand("train", "train one agent per seed; extra --key value pairs override the config");
  std::string config_file;
  train->add_option("-c,--config", config_file, "key/value config file (a manifest also works)")
      ->check(CLI::ExistingFile);
  train->allow_extras();

  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint deterministically");
  std::string ckpt;
  std::string env_name;
  std::size_t episodes = 10;
  std::uint64_t seed = 0;
  std::string csv_out;
  eval->add_option("checkpoint", ckpt, "checkpoint file")->required()->check(CLI::ExistingFile);
  eval->add_option("--env", env_name, "environment (default: the checkpoint's)");
  eval->add_option("--episodes", episodes, "evaluation episodes");
  eval->add_option("--seed", seed, "evaluation seed");
  eval->add_option("-o,--output", csv_out, "CSV file (default: stdout)");

  auto* qerr = app.add_subcommand("qerror", "Q-error of every checkpoint in a directory");
  std::string ckpt_dir;
  double gamma = 0.99;
  qerr->add_option("directory", ckpt_dir, "checkpoint directory")->required()->check(CLI::ExistingDirectory);
  qerr->add_option("--env", env_name, "environment (default: the checkpoint's)");
  qerr->add_option("--gamma", gamma, "discount for the Monte Carlo return");
  qerr->add_option("--episodes", episodes, "rollouts per checkpoint");
  qerr->add_option("--seed", seed, "reset seed");
  qerr->add_option("-o,--output", csv_out, "CSV file (default: stdout)");

  auto* plot = app.add_subcommand("plot", "SVG of mean/std curves");
  std::vector<std::string> csvs;
  std::vector<std::string> labels;
  std::string svg_out = "curves.svg";
  plot->add_option("csv", csvs, "aggregate or per-seed CSVs")->required()->check(CLI::ExistingFile);
  plot->add_option("-l,--label", labels, "one label per CSV");
  plot->add_option("-o,--output", svg_out, "SVG file");

  CLI11_PARSE(app, argc, argv);

  auto with_output = [&](auto&& fn) {
    if (csv_out.empty()) return fn(std::cout);
    std::ofstream out(csv_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + csv_out);
    return fn(out);
  };

  try {
    if (*train) {
      std::optional<std::filesystem::path> cfg;
      if (!config_file.empty()) cfg = config_file;
      const auto result = sarc::cli::cmd_train(cfg, parse_overrides(train->remaining()));
      int failed = 0;
      for (const auto& s : result.seeds) {
        std::cerr << "seed " << s.seed << ": " << (s.ok ? "ok" : "failed: " + s.error) << '\n';
        failed += s.ok ? 0 : 1;
      }
      return failed == 0 ? 0 : 3;
    }
    if (*eval) {
      const auto rec = with_output([&](std::ostream& out) {
        return sarc::cli::cmd_eval(ckpt, env_name, episodes, seed, out);
      });
      std::cerr << "env_step " << rec.env_step << " mean_return " << rec.mean_return
                << " std_return " << rec.std_return << '\n';
    } else if (*qerr) {
      with_output([&](std::ostream& out) {
        return sarc::cli::cmd_qerror(ckpt_dir, env_name, gamma, episodes, seed, out);
      });
    } else if (*plot) {
      std::vector<std::filesystem::path> paths(csvs.begin(), csvs.end());
      sarc::cli::cmd_plot(paths, labels, svg_out);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
