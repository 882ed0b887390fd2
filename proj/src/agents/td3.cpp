#include <algorithm>

#include "detail.hpp"
#include "sarc/agents/agent.hpp"
#include "sarc/agents/losses.hpp"

namespace sarc::agents {

Td3Agent::Td3Agent(AgentConfig config, envs::EnvSpec env_spec, Rng& init_rng)
    : Agent(std::move(config), std::move(env_spec)) {
  const auto map = policy::ActionMap::from_bounds(env_spec_.action_low, env_spec_.action_high);
  actor_ = policy::DeterministicActor(env_spec_.obs_dim, config_.hidden_sizes, map, init_rng);
  actor_targ_ = actor_;
  critics_ = CriticPair(env_spec_.obs_dim, env_spec_.act_dim, config_.hidden_sizes, init_rng);
  actor_opt_ = nnet::AdamState::for_network(actor_.net());
  q1_opt_ = nnet::AdamState::for_network(critics_.q1);
  q2_opt_ = nnet::AdamState::for_network(critics_.q2);
}

Vector Td3Agent::exploit(const Vector& observation) const {
  return actor_.deterministic_action(observation);
}

Vector Td3Agent::explore(const Vector& observation, Rng& rng) const {
  return actor_.noisy_action(observation, config_.exploration_noise_std, rng);
}

double Td3Agent::q_value(const Vector& state, const Vector& action) const {
  const Matrix x = critic_input(Matrix(state.transpose()), Matrix(action.transpose()));
  return std::min(q_values(critics_.q1, x)[0], q_values(critics_.q2, x)[0]);
}

Matrix Td3Agent::smoothing_noise(Eigen::Index rows, Eigen::Index cols, double std, double clip,
                                 Rng& rng) {
  Matrix noise(rows, cols);
  for (Eigen::Index i = 0; i < noise.size(); ++i)
    noise.data()[i] = std::clamp(std * rng.normal(), -clip, clip);
  return noise;
}

Vector Td3Agent::compute_target(const replay::Batch& batch, const Matrix& noise) const {
  const Matrix next_norm = (actor_targ_.normalized(batch.s_next) + noise).cwiseMax(-1.0).cwiseMin(1.0);
  const Matrix x = critic_input(batch.s_next, actor_targ_.action_map().apply(next_norm));
  const Vector q_min = q_values(critics_.q1_targ, x).cwiseMin(q_values(critics_.q2_targ, x));
  return (batch.r.array() + config_.gamma * (1.0 - batch.d.array()) * q_min.array()).matrix();
}

LossReport Td3Agent::update(const replay::ReplayBuffer& buffer, Rng& rng) {
  const replay::Batch batch = buffer.sample_batch(rng, config_.batch_size);
  const Matrix noise = smoothing_noise(batch.size(), env_spec_.act_dim, config_.target_noise_std,
                                       config_.target_noise_clip, rng);
  const Vector y = compute_target(batch, noise);
  const Matrix x = critic_input(batch.s, batch.a);
  const LossAndGrad l1 = mse_critic_loss(critics_.q1, x, y);
  const LossAndGrad l2 = mse_critic_loss(critics_.q2, x, y);

  LossReport report;
  report.q1_mse = l1.loss;
  report.q2_mse = l2.loss;
  check_finite(report);
  nnet::adam_step(critics_.q1, l1.gradients, q1_opt_, config_.critic_lr);
  nnet::adam_step(critics_.q2, l2.gradients, q2_opt_, config_.critic_lr);
  ++counters_.critic_steps;

  if (counters_.updates % config_.policy_delay == 0) {
    const ActorLoss la = deterministic_actor_loss(actor_, critics_.q1, batch.s);
    report.actor_loss = la.loss;
    report.mean_q = la.mean_q;
    report.actor_updated = true;
    check_finite(report);
    nnet::adam_step(actor_.mutable_net(), la.gradients, actor_opt_, config_.actor_lr);
    ++counters_.actor_steps;

    nnet::polyak_update(actor_targ_.mutable_net(), actor_.net(), config_.rho);
    nnet::polyak_update(critics_.q1_targ, critics_.q1, config_.rho);
    nnet::polyak_update(critics_.q2_targ, critics_.q2, config_.rho);
    ++counters_.target_updates;
  }
  ++counters_.updates;
  return report;
}

NetworkMap Td3Agent::networks() const {
  return {{"actor", actor_.net()},     {"actor_targ", actor_targ_.net()},
          {"q1", critics_.q1},         {"q2", critics_.q2},
          {"q1_targ", critics_.q1_targ}, {"q2_targ", critics_.q2_targ}};
}

void Td3Agent::load_networks(const NetworkMap& nets) {
  detail::assign_network(nets, "actor", actor_.mutable_net());
  detail::assign_network(nets, "actor_targ", actor_targ_.mutable_net());
  detail::assign_network(nets, "q1", critics_.q1);
  detail::assign_network(nets, "q2", critics_.q2);
  detail::assign_network(nets, "q1_targ", critics_.q1_targ);
  detail::assign_network(nets, "q2_targ", critics_.q2_targ);
  critics_.sync_previous();
}

}  // namespace sarc::agents
