#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sarc/agents/agent.hpp"
#include "sarc/agents/critics.hpp"
#include "sarc/common/rng.hpp"
#include "sarc/envs/env.hpp"
#include "sarc/policy/squashed_gaussian.hpp"

namespace sarc::eval {

using nnet::Vector;

using PolicyFn = std::function<Vector(const Vector& observation)>;
using QFn = std::function<double(const Vector& state, const Vector& action)>;

struct EvalRecord {
  std::size_t env_step = 0;
  std::vector<double> returns;  // undiscounted, one per episode
  double mean_return = 0.0;
  double std_return = 0.0;  // population standard deviation

  static EvalRecord from_returns(std::size_t env_step, std::vector<double> returns);
};

struct QErrorRecord {
  std::size_t env_step = 0;
  double q_error = 0.0;
};

// Runs n_episodes with the given deterministic policy. Each episode is reset
// with a seed drawn from rng; actions consume no randomness.
EvalRecord evaluate_policy(envs::Env& env, const PolicyFn& policy, std::size_t n_episodes,
                           Rng& rng, std::size_t env_step = 0);
EvalRecord evaluate_policy(envs::Env& env, const agents::Agent& agent, std::size_t n_episodes,
                           Rng& rng, std::size_t env_step = 0);

// Mean over episodes of (G0 - Q(s0, a0))^2, where a0 and the rollout follow the
// deterministic policy and G0 = sum_t gamma^t r_t over plain rewards.
QErrorRecord q_error(envs::Env& env, const PolicyFn& policy, const QFn& q, double gamma,
                     std::size_t n_episodes, Rng& rng, std::size_t env_step = 0);
QErrorRecord q_error(envs::Env& env, const agents::Agent& agent, double gamma,
                     std::size_t n_episodes, Rng& rng, std::size_t env_step = 0);
// Gaussian actor (mean action) against min(Q1, Q2).
QErrorRecord q_error(envs::Env& env, const policy::SquashedGaussianActor& actor,
                     const agents::CriticPair& critics, double gamma, std::size_t n_episodes,
                     Rng& rng, std::size_t env_step = 0);

}  // namespace sarc::eval
