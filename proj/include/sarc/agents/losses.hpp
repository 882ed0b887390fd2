#pragma once

#include "sarc/agents/critics.hpp"
#include "sarc/nnet/grad_check.hpp"
#include "sarc/policy/deterministic.hpp"
#include "sarc/policy/squashed_gaussian.hpp"
#include "sarc/replay/replay_buffer.hpp"

namespace sarc::agents {

using nnet::LossAndGrad;

// y = r + gamma (1 - d) (min(q1_targ, q2_targ) - alpha log_prob), row-wise.
Vector soft_bellman_target(const Vector& rewards, const Vector& dones, const Vector& q1_targ,
                           const Vector& q2_targ, const Vector& log_prob, double alpha,
                           double gamma);

// Critic regression targets for a batch. Draws a' ~ pi(.|s') fresh from rng;
// the result carries no gradient.
Vector compute_critic_target(const replay::Batch& batch, const policy::SquashedGaussianActor& actor,
                             const CriticPair& critics, double alpha, double gamma, Rng& rng);

// mean (pred - target)^2
double mse_value(const Vector& pred, const Vector& target);

// mean[(kappa + 1) |target - current| - kappa |current - previous|].
// Can be negative; never clamped.
double retrospective_value(const Vector& target, const Vector& current, const Vector& previous,
                           double kappa);

// d retrospective_value / d current, with sign(0) = 0 on both distances.
Vector retrospective_gradient(const Vector& target, const Vector& current,
                              const Vector& previous, double kappa);

LossAndGrad mse_critic_loss(const Mlp& critic, const Matrix& input, const Vector& target);

// Gradient flows through `critic` only; `critic_prev` is a constant.
LossAndGrad retrospective_regularizer(const Mlp& critic, const Mlp& critic_prev,
                                      const Matrix& input, const Vector& target, double kappa);

struct CriticLoss {
  double mse = 0.0;
  double weighted_ret = 0.0;  // lambda_ret * regularizer; 0 when lambda_ret == 0
  double total = 0.0;
  double mean_q = 0.0;
  nnet::Params gradients;
};

// mse + lambda_ret * regularizer with one backward pass on the summed output
// gradient. lambda_ret == 0 reproduces mse_critic_loss bit for bit and never
// evaluates critic_prev.
CriticLoss total_retrospective_loss(const Mlp& critic, const Mlp& critic_prev, const Matrix& input,
                                    const Vector& target, double kappa, double lambda_ret);

struct ActorLoss {
  double loss = 0.0;
  double mean_log_prob = 0.0;
  double mean_q = 0.0;
  nnet::Params gradients;
};

// mean[alpha log pi(a~|s) - min(Q1, Q2)(s, a~)], a~ reparameterized; the
// critics are frozen.
ActorLoss actor_loss(const policy::SquashedGaussianActor& actor, const CriticPair& critics,
                     const Matrix& states, double alpha, Rng& rng);
ActorLoss actor_loss_with_noise(const policy::SquashedGaussianActor& actor,
                                const CriticPair& critics, const Matrix& states, double alpha,
                                const Matrix& noise);

// -mean Q(s, mu(s)) for a deterministic actor against a frozen critic.
ActorLoss deterministic_actor_loss(const policy::DeterministicActor& actor, const Mlp& critic,
                                   const Matrix& states);

}  // namespace sarc::agents
