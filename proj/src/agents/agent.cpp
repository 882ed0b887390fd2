#include "sarc/agents/agent.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sarc::agents {

Agent::Agent(AgentConfig config, envs::EnvSpec env_spec)
    : config_(std::move(config)), env_spec_(std::move(env_spec)) {
  config_.validate();
}

Vector Agent::act(const Vector& observation, ActMode mode, Rng& rng,
                  std::size_t steps_so_far) const {
  if (mode == ActMode::Exploit) return exploit(observation);
  if (steps_so_far < config_.start_steps) {
    Vector a(env_spec_.act_dim);
    for (int j = 0; j < env_spec_.act_dim; ++j)
      a[j] = rng.uniform(env_spec_.action_low[j], env_spec_.action_high[j]);
    return a;
  }
  return explore(observation, rng);
}

LossReport Agent::check_finite(const LossReport& r) const {
  for (double v : {r.q1_mse, r.q2_mse, r.q1_ret, r.q2_ret, r.actor_loss, r.mean_q, r.mean_log_prob})
    if (!std::isfinite(v))
      throw std::runtime_error(std::string(to_string(config_.algorithm)) +
                               ": non-finite loss at update " + std::to_string(counters_.updates) +
                               " (q1_mse=" + std::to_string(r.q1_mse) +
                               ", q2_mse=" + std::to_string(r.q2_mse) +
                               ", actor_loss=" + std::to_string(r.actor_loss) + ")");
  return r;
}

std::unique_ptr<Agent> make_agent(const AgentConfig& config, const envs::EnvSpec& env_spec,
                                  Rng& init_rng) {
  switch (config.algorithm) {
    case Algorithm::SAC:
    case Algorithm::SARC:
    case Algorithm::DelayedSAC:
      return std::make_unique<SoftActorCriticAgent>(config, env_spec, init_rng);
    case Algorithm::TD3:
      return std::make_unique<Td3Agent>(config, env_spec, init_rng);
    case Algorithm::DDPG:
      return std::make_unique<DdpgAgent>(config, env_spec, init_rng);
  }
  throw std::invalid_argument("make_agent: unknown algorithm");
}

namespace detail {

void assign_network(const NetworkMap& nets, const std::string& name, Mlp& slot) {
  auto it = nets.find(name);
  if (it == nets.end()) throw std::runtime_error("checkpoint: missing network '" + name + "'");
  if (!it->second.same_shape(slot) ||
      it->second.hidden_activation() != slot.hidden_activation() ||
      it->second.output_activation() != slot.output_activation())
    throw std::runtime_error("checkpoint: network '" + name + "' has the wrong architecture");
  slot = it->second;
}

}  // namespace detail

}  // namespace sarc::agents
