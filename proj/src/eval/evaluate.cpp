#include "sarc/eval/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

#include "sarc/eval/aggregate.hpp"

namespace sarc::eval {

EvalRecord EvalRecord::from_returns(std::size_t env_step, std::vector<double> returns) {
  EvalRecord r;
  r.env_step = env_step;
  r.returns = std::move(returns);
  mean_and_std(r.returns, r.mean_return, r.std_return);
  return r;
}

EvalRecord evaluate_policy(envs::Env& env, const PolicyFn& policy, std::size_t n_episodes,
                           Rng& rng, std::size_t env_step) {
  if (n_episodes == 0) throw std::invalid_argument("evaluate_policy: n_episodes must be >= 1");
  std::vector<double> returns;
  returns.reserve(n_episodes);
  for (std::size_t ep = 0; ep < n_episodes; ++ep) {
    Vector obs = env.reset(rng.next_seed());
    double total = 0.0;
    for (;;) {
      const envs::StepResult s = env.step(policy(obs));
      total += s.reward;
      obs = s.observation;
      if (s.terminal || s.truncated) break;
    }
    returns.push_back(total);
  }
  return EvalRecord::from_returns(env_step, std::move(returns));
}

EvalRecord evaluate_policy(envs::Env& env, const agents::Agent& agent, std::size_t n_episodes,
                           Rng& rng, std::size_t env_step) {
  return evaluate_policy(
      env, [&](const Vector& o) { return agent.exploit(o); }, n_episodes, rng, env_step);
}

QErrorRecord q_error(envs::Env& env, const PolicyFn& policy, const QFn& q, double gamma,
                     std::size_t n_episodes, Rng& rng, std::size_t env_step) {
  if (n_episodes == 0) throw std::invalid_argument("q_error: n_episodes must be >= 1");
  double sum_sq = 0.0;
  for (std::size_t ep = 0; ep < n_episodes; ++ep) {
    const Vector s0 = env.reset(rng.next_seed());
    const Vector a0 = policy(s0);
    const double q0 = q(s0, a0);

    double g0 = 0.0;
    double discount = 1.0;
    Vector action = a0;
    for (;;) {
      const envs::StepResult s = env.step(action);
      g0 += discount * s.reward;
      discount *= gamma;
      if (s.terminal || s.truncated) break;
      action = policy(s.observation);
    }
    sum_sq += (g0 - q0) * (g0 - q0);
  }
  return {env_step, sum_sq / static_cast<double>(n_episodes)};
}

QErrorRecord q_error(envs::Env& env, const agents::Agent& agent, double gamma,
                     std::size_t n_episodes, Rng& rng, std::size_t env_step) {
  return q_error(
      env, [&](const Vector& o) { return agent.exploit(o); },
      [&](const Vector& s, const Vector& a) { return agent.q_value(s, a); }, gamma, n_episodes,
      rng, env_step);
}

QErrorRecord q_error(envs::Env& env, const policy::SquashedGaussianActor& actor,
                     const agents::CriticPair& critics, double gamma, std::size_t n_episodes,
                     Rng& rng, std::size_t env_step) {
  return q_error(
      env, [&](const Vector& o) { return actor.deterministic_action(o); },
      [&](const Vector& s, const Vector& a) {
        const nnet::Matrix x =
            agents::critic_input(nnet::Matrix(s.transpose()), nnet::Matrix(a.transpose()));
        return std::min(agents::q_values(critics.q1, x)[0], agents::q_values(critics.q2, x)[0]);
      },
      gamma, n_episodes, rng, env_step);
}

}  // namespace sarc::eval
