#include "detail.hpp"
#include "sarc/agents/agent.hpp"
#include "sarc/agents/losses.hpp"

namespace sarc::agents {

DdpgAgent::DdpgAgent(AgentConfig config, envs::EnvSpec env_spec, Rng& init_rng)
    : Agent(std::move(config), std::move(env_spec)) {
  const auto map = policy::ActionMap::from_bounds(env_spec_.action_low, env_spec_.action_high);
  actor_ = policy::DeterministicActor(env_spec_.obs_dim, config_.hidden_sizes, map, init_rng);
  actor_targ_ = actor_;
  q_ = make_critic(env_spec_.obs_dim, env_spec_.act_dim, config_.hidden_sizes, init_rng);
  q_targ_ = q_;
  actor_opt_ = nnet::AdamState::for_network(actor_.net());
  q_opt_ = nnet::AdamState::for_network(q_);
}

Vector DdpgAgent::exploit(const Vector& observation) const {
  return actor_.deterministic_action(observation);
}

Vector DdpgAgent::explore(const Vector& observation, Rng& rng) const {
  return actor_.noisy_action(observation, config_.exploration_noise_std, rng);
}

double DdpgAgent::q_value(const Vector& state, const Vector& action) const {
  return q_values(q_, critic_input(Matrix(state.transpose()), Matrix(action.transpose())))[0];
}

Vector DdpgAgent::compute_target(const replay::Batch& batch) const {
  const Matrix x = critic_input(batch.s_next, actor_targ_.deterministic_action(batch.s_next));
  const Vector q = q_values(q_targ_, x);
  return (batch.r.array() + config_.gamma * (1.0 - batch.d.array()) * q.array()).matrix();
}

LossReport DdpgAgent::update(const replay::ReplayBuffer& buffer, Rng& rng) {
  const replay::Batch batch = buffer.sample_batch(rng, config_.batch_size);
  const Vector y = compute_target(batch);
  const LossAndGrad lq = mse_critic_loss(q_, critic_input(batch.s, batch.a), y);

  LossReport report;
  report.q1_mse = lq.loss;
  check_finite(report);
  nnet::adam_step(q_, lq.gradients, q_opt_, config_.critic_lr);
  ++counters_.critic_steps;

  const ActorLoss la = deterministic_actor_loss(actor_, q_, batch.s);
  report.actor_loss = la.loss;
  report.mean_q = la.mean_q;
  report.actor_updated = true;
  check_finite(report);
  nnet::adam_step(actor_.mutable_net(), la.gradients, actor_opt_, config_.actor_lr);
  ++counters_.actor_steps;

  nnet::polyak_update(actor_targ_.mutable_net(), actor_.net(), config_.rho);
  nnet::polyak_update(q_targ_, q_, config_.rho);
  ++counters_.target_updates;
  ++counters_.updates;
  return report;
}

NetworkMap DdpgAgent::networks() const {
  return {{"actor", actor_.net()}, {"actor_targ", actor_targ_.net()}, {"q", q_}, {"q_targ", q_targ_}};
}

void DdpgAgent::load_networks(const NetworkMap& nets) {
  detail::assign_network(nets, "actor", actor_.mutable_net());
  detail::assign_network(nets, "actor_targ", actor_targ_.mutable_net());
  detail::assign_network(nets, "q", q_);
  detail::assign_network(nets, "q_targ", q_targ_);
}

}  // namespace sarc::agents
