#include "sarc/agents/config.hpp"

#include <cmath>
#include <stdexcept>

namespace sarc::agents {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::SAC:
      return "sac";
    case Algorithm::SARC:
      return "sarc";
    case Algorithm::DelayedSAC:
      return "delayed_sac";
    case Algorithm::TD3:
      return "td3";
    case Algorithm::DDPG:
      return "ddpg";
  }
  return "sac";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "sac" || name == "SAC") return Algorithm::SAC;
  if (name == "sarc" || name == "SARC") return Algorithm::SARC;
  if (name == "delayed_sac" || name == "DelayedSAC" || name == "delayed-sac")
    return Algorithm::DelayedSAC;
  if (name == "td3" || name == "TD3") return Algorithm::TD3;
  if (name == "ddpg" || name == "DDPG") return Algorithm::DDPG;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

bool uses_gaussian_actor(Algorithm a) {
  return a == Algorithm::SAC || a == Algorithm::SARC || a == Algorithm::DelayedSAC;
}

AgentConfig AgentConfig::for_algorithm(Algorithm a) {
  AgentConfig c;
  c.algorithm = a;
  if (a == Algorithm::DelayedSAC) c.critic_updates_per_actor_update = 2;
  return c;
}

void AgentConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("agent config: " + what); };
  if (!(kappa > 0.0) || !std::isfinite(kappa)) fail("kappa must be > 0");
  if (!(lambda_ret >= 0.0) || !std::isfinite(lambda_ret)) fail("lambda_ret must be >= 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail("alpha must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma must lie in [0, 1]");
  if (!(rho >= 0.0 && rho <= 1.0)) fail("rho must lie in [0, 1]");
  if (!(actor_lr > 0.0) || !(critic_lr > 0.0)) fail("learning rates must be > 0");
  if (batch_size == 0) fail("batch_size must be >= 1");
  if (update_every == 0) fail("update_every must be >= 1");
  if (critic_updates_per_actor_update == 0) fail("critic_updates_per_actor_update must be >= 1");
  if (policy_delay == 0) fail("policy_delay must be >= 1");
  if (!(target_noise_std >= 0.0) || !(target_noise_clip >= 0.0))
    fail("target noise parameters must be >= 0");
  if (!(exploration_noise_std >= 0.0)) fail("exploration_noise_std must be >= 0");
  if (hidden_sizes.empty()) fail("hidden_sizes must be non-empty");
  for (int h : hidden_sizes)
    if (h <= 0) fail("hidden_sizes entries must be positive");
  if (replay_capacity == 0) fail("replay_capacity must be >= 1");
}

}  // namespace sarc::agents
