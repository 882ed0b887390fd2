#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>

#include "sarc/agents/agent.hpp"

namespace sarc::agents {

// Agent checkpoint: a header followed by named network blocks in the
// nnet text format (see nnet/serialize.hpp).
//
//   sarc-checkpoint 1
//   algorithm <sac|sarc|delayed_sac|td3|ddpg>
//   env <name>
//   env_step <n>
//   obs_dim <n>
//   max_episode_steps <n>
//   action_low <hex floats...>
//   action_high <hex floats...>
//   networks <count>
//   network <name>
//   <mlp block>
//   ...
//   end-checkpoint
struct Checkpoint {
  Algorithm algorithm = Algorithm::SAC;
  std::string env_name;
  std::size_t env_step = 0;
  envs::EnvSpec env_spec;
  NetworkMap networks;

  static Checkpoint capture(const Agent& agent, std::size_t env_step);
};

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
Checkpoint read_checkpoint(std::istream& in);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Rebuilds an agent whose networks are the checkpoint's. Optimizer state is
// not stored; the result is meant for evaluation.
std::unique_ptr<Agent> restore_agent(const Checkpoint& ckpt, AgentConfig config);
std::unique_ptr<Agent> restore_agent(const Checkpoint& ckpt);

}  // namespace sarc::agents
