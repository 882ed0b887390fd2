#include "sarc/agents/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace sarc::agents {

namespace {

double sign(double x) { return (x > 0.0) - (x < 0.0); }

void check_same_size(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

Vector soft_bellman_target(const Vector& rewards, const Vector& dones, const Vector& q1_targ,
                           const Vector& q2_targ, const Vector& log_prob, double alpha,
                           double gamma) {
  check_same_size(rewards, dones, "soft_bellman_target");
  check_same_size(rewards, q1_targ, "soft_bellman_target");
  check_same_size(rewards, q2_targ, "soft_bellman_target");
  check_same_size(rewards, log_prob, "soft_bellman_target");
  const auto soft_value = q1_targ.array().min(q2_targ.array()) - alpha * log_prob.array();
  return (rewards.array() + gamma * (1.0 - dones.array()) * soft_value).matrix();
}

Vector compute_critic_target(const replay::Batch& batch, const policy::SquashedGaussianActor& actor,
                             const CriticPair& critics, double alpha, double gamma, Rng& rng) {
  const policy::GaussianSample next = actor.sample(batch.s_next, rng);
  const Matrix x = critic_input(batch.s_next, next.action);
  return soft_bellman_target(batch.r, batch.d, q_values(critics.q1_targ, x),
                             q_values(critics.q2_targ, x), next.log_prob, alpha, gamma);
}

double mse_value(const Vector& pred, const Vector& target) {
  check_same_size(pred, target, "mse_value");
  return (pred - target).squaredNorm() / static_cast<double>(pred.size());
}

double retrospective_value(const Vector& target, const Vector& current, const Vector& previous,
                           double kappa) {
  check_same_size(target, current, "retrospective_value");
  check_same_size(target, previous, "retrospective_value");
  const auto terms = (kappa + 1.0) * (target - current).array().abs() -
                     kappa * (current - previous).array().abs();
  return terms.sum() / static_cast<double>(target.size());
}

Vector retrospective_gradient(const Vector& target, const Vector& current,
                              const Vector& previous, double kappa) {
  check_same_size(target, current, "retrospective_gradient");
  check_same_size(target, previous, "retrospective_gradient");
  const double n = static_cast<double>(target.size());
  Vector g(target.size());
  for (Eigen::Index i = 0; i < g.size(); ++i)
    g[i] = ((kappa + 1.0) * sign(current[i] - target[i]) - kappa * sign(current[i] - previous[i])) /
           n;
  return g;
}

LossAndGrad mse_critic_loss(const Mlp& critic, const Matrix& input, const Vector& target) {
  nnet::ForwardCache cache;
  const Vector q = critic.forward(input, &cache).col(0);
  check_same_size(q, target, "mse_critic_loss");
  const Matrix out_grad = (2.0 / static_cast<double>(q.size())) * (q - target);
  return {mse_value(q, target), critic.backward(cache, out_grad).gradients};
}

LossAndGrad retrospective_regularizer(const Mlp& critic, const Mlp& critic_prev,
                                      const Matrix& input, const Vector& target, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("retrospective_regularizer: kappa must be > 0");
  if (!critic.same_shape(critic_prev))
    throw std::invalid_argument("retrospective_regularizer: previous critic shape mismatch");
  nnet::ForwardCache cache;
  const Vector q = critic.forward(input, &cache).col(0);
  const Vector q_prev = q_values(critic_prev, input);
  const Matrix out_grad = retrospective_gradient(target, q, q_prev, kappa);
  return {retrospective_value(target, q, q_prev, kappa),
          critic.backward(cache, out_grad).gradients};
}

CriticLoss total_retrospective_loss(const Mlp& critic, const Mlp& critic_prev, const Matrix& input,
                                    const Vector& target, double kappa, double lambda_ret) {
  if (!(lambda_ret >= 0.0)) throw std::invalid_argument("total_retrospective_loss: lambda_ret < 0");
  nnet::ForwardCache cache;
  const Vector q = critic.forward(input, &cache).col(0);
  check_same_size(q, target, "total_retrospective_loss");

  CriticLoss out;
  out.mse = mse_value(q, target);
  out.mean_q = q.mean();
  Matrix out_grad = (2.0 / static_cast<double>(q.size())) * (q - target);
  if (lambda_ret != 0.0) {
    if (!(kappa > 0.0)) throw std::invalid_argument("total_retrospective_loss: kappa must be > 0");
    if (!critic.same_shape(critic_prev))
      throw std::invalid_argument("total_retrospective_loss: previous critic shape mismatch");
    const Vector q_prev = q_values(critic_prev, input);
    out.weighted_ret = lambda_ret * retrospective_value(target, q, q_prev, kappa);
    out_grad += lambda_ret * retrospective_gradient(target, q, q_prev, kappa);
  }
  out.total = out.mse + out.weighted_ret;
  out.gradients = critic.backward(cache, out_grad).gradients;
  return out;
}

ActorLoss actor_loss(const policy::SquashedGaussianActor& actor, const CriticPair& critics,
                     const Matrix& states, double alpha, Rng& rng) {
  Matrix noise(states.rows(), actor.act_dim());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise.data()[i] = rng.normal();
  return actor_loss_with_noise(actor, critics, states, alpha, noise);
}

ActorLoss actor_loss_with_noise(const policy::SquashedGaussianActor& actor,
                                const CriticPair& critics, const Matrix& states, double alpha,
                                const Matrix& noise) {
  const policy::GaussianSample sample = actor.sample_with_noise(states, noise);
  const Matrix x = critic_input(states, sample.action);
  nnet::ForwardCache c1, c2;
  const Vector q1 = critics.q1.forward(x, &c1).col(0);
  const Vector q2 = critics.q2.forward(x, &c2).col(0);

  const Eigen::Index n = states.rows();
  const double inv_n = 1.0 / static_cast<double>(n);
  Matrix g1 = Matrix::Zero(n, 1);
  Matrix g2 = Matrix::Zero(n, 1);
  Vector q_min(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (q1[i] <= q2[i]) {
      q_min[i] = q1[i];
      g1(i, 0) = -inv_n;
    } else {
      q_min[i] = q2[i];
      g2(i, 0) = -inv_n;
    }
  }
  const int act_dim = actor.act_dim();
  const Matrix action_grad = critics.q1.backward_input(c1, g1).rightCols(act_dim) +
                             critics.q2.backward_input(c2, g2).rightCols(act_dim);
  const Vector log_prob_grad = Vector::Constant(n, alpha * inv_n);

  ActorLoss out;
  out.mean_log_prob = sample.log_prob.mean();
  out.mean_q = q_min.mean();
  out.loss = (alpha * sample.log_prob - q_min).mean();
  out.gradients = actor.backward(sample, action_grad, log_prob_grad);
  return out;
}

ActorLoss deterministic_actor_loss(const policy::DeterministicActor& actor, const Mlp& critic,
                                   const Matrix& states) {
  nnet::ForwardCache actor_cache;
  const Matrix squashed = actor.normalized(states, &actor_cache);
  const Matrix action = actor.action_map().apply(squashed);
  const Matrix x = critic_input(states, action);
  nnet::ForwardCache critic_cache;
  const Vector q = critic.forward(x, &critic_cache).col(0);
  const Eigen::Index n = states.rows();
  const Matrix g = Matrix::Constant(n, 1, -1.0 / static_cast<double>(n));
  const Matrix action_grad = critic.backward_input(critic_cache, g).rightCols(actor.act_dim());

  ActorLoss out;
  out.mean_q = q.mean();
  out.loss = -out.mean_q;
  out.gradients = actor.backward(actor_cache, action_grad);
  return out;
}

}  // namespace sarc::agents
