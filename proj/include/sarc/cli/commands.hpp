#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sarc/cli/experiment.hpp"
#include "sarc/eval/evaluate.hpp"

namespace sarc::cli {

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Parses the optional config file, applies overrides (keys as in the file,
// e.g. "agent.algorithm"), validates and runs every seed.
ExperimentConfig resolve_config(const std::optional<std::filesystem::path>& config_file,
                                const Overrides& overrides);
ExperimentResult cmd_train(const std::optional<std::filesystem::path>& config_file,
                           const Overrides& overrides);

// Deterministic evaluation of a checkpoint. An empty env name means the one
// recorded in the checkpoint, with its episode horizon. The CSV row (kEvalCsvHeader) goes to `csv`.
eval::EvalRecord cmd_eval(const std::filesystem::path& checkpoint, const std::string& env_name,
                          std::size_t episodes, std::uint64_t seed, std::ostream& csv);

// One QErrorRecord per *.ckpt file in `dir`, sorted by env_step, written as a
// kQErrorCsvHeader CSV. Each checkpoint gets a fresh stream from `seed`.
std::vector<eval::QErrorRecord> cmd_qerror(const std::filesystem::path& dir,
                                           const std::string& env_name, double gamma,
                                           std::size_t episodes, std::uint64_t seed,
                                           std::ostream& csv);

// Accepts aggregate CSVs (env_step,mean,std) or per-seed CSVs
// (env_step,mean_return,std_return).
void cmd_plot(const std::vector<std::filesystem::path>& csvs,
              const std::vector<std::string>& labels, const std::filesystem::path& out_svg);

}  // namespace sarc::cli
