#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sarc::agents {

enum class Algorithm { SAC, SARC, DelayedSAC, TD3, DDPG };

std::string_view to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view name);
bool uses_gaussian_actor(Algorithm a);

struct AgentConfig {
  Algorithm algorithm = Algorithm::SARC;

  // Retrospective regularizer. kappa > 0; lambda_ret scales the whole term
  // and 0 switches it off exactly. Only SARC reads these.
  double kappa = 2.0;
  double lambda_ret = 1.0;

  double alpha = 0.2;  // fixed entropy coefficient (SAC family)
  double gamma = 0.99;
  double rho = 0.995;  // Polyak coefficient
  double actor_lr = 1e-3;
  double critic_lr = 1e-3;
  std::size_t batch_size = 100;

  std::size_t start_steps = 1'000;
  std::size_t update_after = 1'000;
  std::size_t update_every = 50;
  std::size_t num_updates = 50;

  std::size_t critic_updates_per_actor_update = 1;  // DelayedSAC: 2
  std::size_t policy_delay = 2;                     // TD3
  double target_noise_std = 0.2;                    // TD3
  double target_noise_clip = 0.5;                   // TD3
  double exploration_noise_std = 0.1;               // TD3 / DDPG, normalized units

  std::vector<int> hidden_sizes{256, 256};
  std::size_t replay_capacity = 1'000'000;

  // Defaults with the algorithm-specific cadence filled in.
  static AgentConfig for_algorithm(Algorithm a);

  // Weight actually applied to the retrospective term.
  double effective_lambda() const { return algorithm == Algorithm::SARC ? lambda_ret : 0.0; }

  // Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

}  // namespace sarc::agents
