#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "sarc/agents/config.hpp"
#include "sarc/agents/critics.hpp"
#include "sarc/envs/env.hpp"
#include "sarc/nnet/adam.hpp"
#include "sarc/policy/deterministic.hpp"
#include "sarc/policy/squashed_gaussian.hpp"
#include "sarc/replay/replay_buffer.hpp"

namespace sarc::agents {

enum class ActMode { Explore, Exploit };

// Telemetry for one update call.
struct LossReport {
  double q1_mse = 0.0;
  double q2_mse = 0.0;
  double q1_ret = 0.0;  // lambda_ret-weighted regularizer contribution
  double q2_ret = 0.0;
  double actor_loss = 0.0;
  double mean_q = 0.0;
  double mean_log_prob = 0.0;
  bool actor_updated = false;
};

struct UpdateCounters {
  std::uint64_t updates = 0;
  std::uint64_t critic_steps = 0;  // per critic network
  std::uint64_t actor_steps = 0;
  std::uint64_t target_updates = 0;
};

using NetworkMap = std::map<std::string, nnet::Mlp>;

class Agent {
 public:
  Agent(AgentConfig config, envs::EnvSpec env_spec);
  virtual ~Agent() = default;
  Agent(const Agent&) = default;
  Agent& operator=(const Agent&) = default;

  // Explore: uniform over the action box while steps_so_far < start_steps,
  // then the algorithm's exploration policy. Exploit: deterministic action,
  // consumes no randomness.
  Vector act(const Vector& observation, ActMode mode, Rng& rng, std::size_t steps_so_far) const;

  virtual Vector exploit(const Vector& observation) const = 0;
  virtual LossReport update(const replay::ReplayBuffer& buffer, Rng& rng) = 0;
  // Critic estimate used for diagnostics: min over twin critics when present.
  virtual double q_value(const Vector& state, const Vector& action) const = 0;

  virtual NetworkMap networks() const = 0;
  // Replaces parameters from a checkpoint; names and shapes must match.
  virtual void load_networks(const NetworkMap& nets) = 0;

  const AgentConfig& config() const { return config_; }
  const envs::EnvSpec& env_spec() const { return env_spec_; }
  const UpdateCounters& counters() const { return counters_; }

 protected:
  virtual Vector explore(const Vector& observation, Rng& rng) const = 0;
  LossReport check_finite(const LossReport& r) const;

  AgentConfig config_;
  envs::EnvSpec env_spec_;
  UpdateCounters counters_;
};

enum class UpdatePhase {
  Entry,              // before the batch is sampled
  BeforeCriticStep,   // losses computed, Adam not yet applied
  AfterCriticStep,
  Exit,               // after the previous-critic snapshot
};

// SAC, SARC and delayed SAC: squashed-Gaussian actor, twin critics, fixed alpha.
class SoftActorCriticAgent final : public Agent {
 public:
  using Observer = std::function<void(UpdatePhase, std::uint64_t iteration, const CriticPair&)>;

  SoftActorCriticAgent(AgentConfig config, envs::EnvSpec env_spec, Rng& init_rng);

  Vector exploit(const Vector& observation) const override;
  // One iteration of the inner update loop: sample, targets, critic step
  // (MSE + retrospective term), actor step on cadence, Polyak, snapshot.
  LossReport update(const replay::ReplayBuffer& buffer, Rng& rng) override;
  double q_value(const Vector& state, const Vector& action) const override;
  NetworkMap networks() const override;
  void load_networks(const NetworkMap& nets) override;

  void set_observer(Observer observer) { observer_ = std::move(observer); }

  const policy::SquashedGaussianActor& actor() const { return actor_; }
  const CriticPair& critics() const { return critics_; }

 protected:
  Vector explore(const Vector& observation, Rng& rng) const override;

 private:
  void notify(UpdatePhase phase) const {
    if (observer_) observer_(phase, counters_.updates, critics_);
  }

  policy::SquashedGaussianActor actor_;
  CriticPair critics_;
  nnet::AdamState actor_opt_, q1_opt_, q2_opt_;
  Observer observer_;
};

// TD3: deterministic actor, twin critics with clipped double-Q targets and
// target-policy smoothing, delayed actor and target updates.
class Td3Agent final : public Agent {
 public:
  Td3Agent(AgentConfig config, envs::EnvSpec env_spec, Rng& init_rng);

  Vector exploit(const Vector& observation) const override;
  LossReport update(const replay::ReplayBuffer& buffer, Rng& rng) override;
  double q_value(const Vector& state, const Vector& action) const override;
  NetworkMap networks() const override;
  void load_networks(const NetworkMap& nets) override;

  // Clipped smoothing noise for a batch, normalized action units.
  static Matrix smoothing_noise(Eigen::Index rows, Eigen::Index cols, double std, double clip,
                                Rng& rng);
  // min over target critics at (s', clip(mu_targ(s') + noise)).
  Vector compute_target(const replay::Batch& batch, const Matrix& noise) const;

  const policy::DeterministicActor& actor() const { return actor_; }
  const policy::DeterministicActor& actor_target() const { return actor_targ_; }
  const CriticPair& critics() const { return critics_; }
  CriticPair& mutable_critics() { return critics_; }

 protected:
  Vector explore(const Vector& observation, Rng& rng) const override;

 private:
  policy::DeterministicActor actor_, actor_targ_;
  CriticPair critics_;  // prev snapshots unused
  nnet::AdamState actor_opt_, q1_opt_, q2_opt_;
};

// DDPG: deterministic actor, single critic, targets for both.
class DdpgAgent final : public Agent {
 public:
  DdpgAgent(AgentConfig config, envs::EnvSpec env_spec, Rng& init_rng);

  Vector exploit(const Vector& observation) const override;
  LossReport update(const replay::ReplayBuffer& buffer, Rng& rng) override;
  double q_value(const Vector& state, const Vector& action) const override;
  NetworkMap networks() const override;
  void load_networks(const NetworkMap& nets) override;

  Vector compute_target(const replay::Batch& batch) const;

  const policy::DeterministicActor& actor() const { return actor_; }
  const Mlp& critic() const { return q_; }

 protected:
  Vector explore(const Vector& observation, Rng& rng) const override;

 private:
  policy::DeterministicActor actor_, actor_targ_;
  Mlp q_, q_targ_;
  nnet::AdamState actor_opt_, q_opt_;
};

std::unique_ptr<Agent> make_agent(const AgentConfig& config, const envs::EnvSpec& env_spec,
                                  Rng& init_rng);

}  // namespace sarc::agents
