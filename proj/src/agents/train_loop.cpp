#include "sarc/agents/train_loop.hpp"

namespace sarc::agents {

void IntervalLosses::add(const LossReport& r) {
  ++updates;
  q1_mse += r.q1_mse;
  q2_mse += r.q2_mse;
  q1_ret += r.q1_ret;
  q2_ret += r.q2_ret;
  if (r.actor_updated) {
    ++actor_updates;
    actor_loss += r.actor_loss;
  }
}

IntervalLosses IntervalLosses::mean() const {
  IntervalLosses m = *this;
  if (updates > 0) {
    const double n = static_cast<double>(updates);
    m.q1_mse /= n;
    m.q2_mse /= n;
    m.q1_ret /= n;
    m.q2_ret /= n;
  }
  if (actor_updates > 0) m.actor_loss /= static_cast<double>(actor_updates);
  return m;
}

TrainResult train_loop(envs::Env& env, Agent& agent, replay::ReplayBuffer& buffer,
                       const TrainOptions& options, Rng& rng, Rng& reset_rng,
                       const TrainHooks& hooks) {
  TrainResult result;
  if (options.total_steps == 0) return result;
  const AgentConfig& cfg = agent.config();

  Vector obs = env.reset(reset_rng.next_seed());
  double episode_return = 0.0;
  IntervalLosses window;

  for (std::size_t t = 0; t < options.total_steps; ++t) {
    const Vector action = agent.act(obs, ActMode::Explore, rng, t);
    const envs::StepResult step = env.step(action);
    buffer.store({obs, action, step.reward, step.observation, step.terminal});
    episode_return += step.reward;
    obs = step.observation;
    if (step.terminal || step.truncated) {
      result.episode_returns.push_back(episode_return);
      episode_return = 0.0;
      obs = env.reset(reset_rng.next_seed());
    }

    const std::size_t env_step = t + 1;
    if (env_step >= cfg.update_after && env_step % cfg.update_every == 0) {
      for (std::size_t j = 0; j < cfg.num_updates; ++j) {
        window.add(agent.update(buffer, rng));
        ++result.updates;
      }
    }
    result.env_steps = env_step;

    if (hooks.on_step) hooks.on_step(env_step, agent);
    if (options.report_interval > 0 && env_step % options.report_interval == 0) {
      if (hooks.on_interval) hooks.on_interval(env_step, window.mean(), agent);
      window = IntervalLosses{};
    }
    if (hooks.should_stop && hooks.should_stop(env_step)) break;
  }
  return result;
}

}  // namespace sarc::agents
