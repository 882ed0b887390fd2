#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sarc/agents/agent.hpp"
#include "sarc/envs/env.hpp"
#include "sarc/replay/replay_buffer.hpp"

namespace sarc::agents {

// Mean of the LossReports produced since the previous interval boundary.
// actor_loss averages only the calls that actually stepped the actor.
struct IntervalLosses {
  std::size_t updates = 0;
  std::size_t actor_updates = 0;
  double q1_mse = 0.0;
  double q2_mse = 0.0;
  double q1_ret = 0.0;
  double q2_ret = 0.0;
  double actor_loss = 0.0;

  void add(const LossReport& r);
  IntervalLosses mean() const;
};

struct TrainOptions {
  std::size_t total_steps = 0;
  std::size_t report_interval = 0;  // 0 disables on_interval
};

struct TrainHooks {
  // After every environment step (and any updates it triggered).
  std::function<void(std::size_t env_step, Agent& agent)> on_step;
  // Every report_interval steps, with the averaged losses of that window.
  std::function<void(std::size_t env_step, const IntervalLosses& losses, Agent& agent)> on_interval;
  // Checked after on_step/on_interval; returning true ends the run early.
  std::function<bool(std::size_t env_step)> should_stop;
};

struct TrainResult {
  std::size_t env_steps = 0;
  std::size_t updates = 0;
  std::vector<double> episode_returns;  // completed training episodes
};

// Interaction loop: act (uniform warmup, then the exploration policy), step,
// store (done = terminal only), reset on terminal or truncation; after
// update_after collected steps, every update_every steps run num_updates
// agent updates. `rng` drives actions and updates; `reset_rng` seeds episode
// resets.
TrainResult train_loop(envs::Env& env, Agent& agent, replay::ReplayBuffer& buffer,
                       const TrainOptions& options, Rng& rng, Rng& reset_rng,
                       const TrainHooks& hooks = {});

}  // namespace sarc::agents
