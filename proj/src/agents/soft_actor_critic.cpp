#include "detail.hpp"
#include "sarc/agents/agent.hpp"
#include "sarc/agents/losses.hpp"

namespace sarc::agents {

SoftActorCriticAgent::SoftActorCriticAgent(AgentConfig config, envs::EnvSpec env_spec,
                                           Rng& init_rng)
    : Agent(std::move(config), std::move(env_spec)) {
  const auto map = policy::ActionMap::from_bounds(env_spec_.action_low, env_spec_.action_high);
  actor_ = policy::SquashedGaussianActor(env_spec_.obs_dim, config_.hidden_sizes, map, init_rng);
  critics_ = CriticPair(env_spec_.obs_dim, env_spec_.act_dim, config_.hidden_sizes, init_rng);
  actor_opt_ = nnet::AdamState::for_network(actor_.net());
  q1_opt_ = nnet::AdamState::for_network(critics_.q1);
  q2_opt_ = nnet::AdamState::for_network(critics_.q2);
}

Vector SoftActorCriticAgent::exploit(const Vector& observation) const {
  return actor_.deterministic_action(observation);
}

Vector SoftActorCriticAgent::explore(const Vector& observation, Rng& rng) const {
  return actor_.sample(Matrix(observation.transpose()), rng).action.row(0).transpose();
}

double SoftActorCriticAgent::q_value(const Vector& state, const Vector& action) const {
  const Matrix x = critic_input(Matrix(state.transpose()), Matrix(action.transpose()));
  return std::min(q_values(critics_.q1, x)[0], q_values(critics_.q2, x)[0]);
}

LossReport SoftActorCriticAgent::update(const replay::ReplayBuffer& buffer, Rng& rng) {
  notify(UpdatePhase::Entry);
  const replay::Batch batch = buffer.sample_batch(rng, config_.batch_size);
  const Vector y =
      compute_critic_target(batch, actor_, critics_, config_.alpha, config_.gamma, rng);
  const Matrix x = critic_input(batch.s, batch.a);
  const double lambda = config_.effective_lambda();
  const CriticLoss l1 =
      total_retrospective_loss(critics_.q1, critics_.q1_prev, x, y, config_.kappa, lambda);
  const CriticLoss l2 =
      total_retrospective_loss(critics_.q2, critics_.q2_prev, x, y, config_.kappa, lambda);

  LossReport report;
  report.q1_mse = l1.mse;
  report.q2_mse = l2.mse;
  report.q1_ret = l1.weighted_ret;
  report.q2_ret = l2.weighted_ret;
  report.mean_q = 0.5 * (l1.mean_q + l2.mean_q);
  check_finite(report);

  notify(UpdatePhase::BeforeCriticStep);
  nnet::adam_step(critics_.q1, l1.gradients, q1_opt_, config_.critic_lr);
  nnet::adam_step(critics_.q2, l2.gradients, q2_opt_, config_.critic_lr);
  ++counters_.critic_steps;
  notify(UpdatePhase::AfterCriticStep);

  if (counters_.updates % config_.critic_updates_per_actor_update == 0) {
    const ActorLoss la = actor_loss(actor_, critics_, batch.s, config_.alpha, rng);
    report.actor_loss = la.loss;
    report.mean_log_prob = la.mean_log_prob;
    report.actor_updated = true;
    check_finite(report);
    nnet::adam_step(actor_.mutable_net(), la.gradients, actor_opt_, config_.actor_lr);
    ++counters_.actor_steps;
  }

  nnet::polyak_update(critics_.q1_targ, critics_.q1, config_.rho);
  nnet::polyak_update(critics_.q2_targ, critics_.q2, config_.rho);
  ++counters_.target_updates;

  critics_.sync_previous();
  notify(UpdatePhase::Exit);
  ++counters_.updates;
  return report;
}

NetworkMap SoftActorCriticAgent::networks() const {
  return {{"actor", actor_.net()},          {"q1", critics_.q1},
          {"q2", critics_.q2},              {"q1_targ", critics_.q1_targ},
          {"q2_targ", critics_.q2_targ},    {"q1_prev", critics_.q1_prev},
          {"q2_prev", critics_.q2_prev}};
}

void SoftActorCriticAgent::load_networks(const NetworkMap& nets) {
  detail::assign_network(nets, "actor", actor_.mutable_net());
  detail::assign_network(nets, "q1", critics_.q1);
  detail::assign_network(nets, "q2", critics_.q2);
  detail::assign_network(nets, "q1_targ", critics_.q1_targ);
  detail::assign_network(nets, "q2_targ", critics_.q2_targ);
  detail::assign_network(nets, "q1_prev", critics_.q1_prev);
  detail::assign_network(nets, "q2_prev", critics_.q2_prev);
}

}  // namespace sarc::agents
