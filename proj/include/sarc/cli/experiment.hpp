#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sarc/agents/config.hpp"
#include "sarc/cli/config_file.hpp"
#include "sarc/envs/env.hpp"

namespace sarc::cli {

// Rng stream ids derived from each run seed.
enum Stream : std::uint64_t {
  kInitStream = 1,
  kTrainStream = 2,
  kResetStream = 3,
  kEvalStream = 4,
  kQErrorStream = 5,
};

struct ExperimentConfig {
  std::string env_name = "pendulum-swingup";
  envs::EnvConfig env;
  agents::AgentConfig agent;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::size_t total_steps = 50'000;
  std::size_t eval_interval = 2'000;
  std::size_t eval_episodes = 10;
  std::size_t checkpoint_interval = 10'000;  // 0 disables
  std::size_t qerror_interval = 10'000;      // 0 disables; multiple of eval_interval
  std::size_t qerror_episodes = 10;
  std::filesystem::path output_dir = "runs/default";
  std::size_t jobs = 1;  // concurrent seeds

  // Keys under "manifest." are ignored so a manifest can be fed back in.
  static ExperimentConfig from_tree(const KeyValueTree& tree);
  // Every field, canonical formatting.
  KeyValueTree to_tree() const;
  void validate() const;
};

// Column sets of the emitted CSVs.
extern const char* const kSeedCsvHeader;       // seed_<k>.csv
extern const char* const kAggregateCsvHeader;  // aggregate*.csv
extern const char* const kQErrorCsvHeader;     // qerror command output
extern const char* const kEvalCsvHeader;       // eval command output

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::vector<std::filesystem::path> files;
};

struct ExperimentResult {
  std::vector<SeedOutcome> seeds;
  std::vector<std::filesystem::path> files;  // everything written, manifest included
};

// Trains one agent per seed, writes per-seed CSVs, checkpoints, aggregates and
// the manifest under config.output_dir. A seed that throws is recorded as
// failed and excluded from the aggregates.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Runs a single seed, writing its CSV and checkpoints.
SeedOutcome run_seed(const ExperimentConfig& config, std::uint64_t seed);

std::string build_identifier();
std::string format_number(double v);

}  // namespace sarc::cli
