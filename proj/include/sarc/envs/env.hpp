#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sarc/nnet/matrix.hpp"

namespace sarc::envs {

using nnet::Vector;

struct EnvSpec {
  std::string name;
  int obs_dim = 0;
  int act_dim = 0;
  Vector action_low;
  Vector action_high;
  int max_episode_steps = 1;
};

// `terminal` marks genuine MDP termination and is what the replay buffer
// stores as the done flag. `truncated` marks the time-limit cutoff only.
struct StepResult {
  Vector observation;
  double reward = 0.0;
  bool terminal = false;
  bool truncated = false;
};

struct EnvConfig {
  int max_episode_steps = 0;  // 0 keeps the environment's own horizon
};

class Env {
 public:
  virtual ~Env() = default;

  virtual const EnvSpec& spec() const = 0;
  virtual Vector reset(std::uint64_t seed) = 0;
  // Action is clipped to the bounds; non-finite entries throw
  // std::invalid_argument. Stepping past the time limit without a reset
  // throws std::logic_error.
  virtual StepResult step(const Vector& action) = 0;
  // Fresh, un-reset instance with the same configuration.
  virtual std::unique_ptr<Env> clone() const = 0;
  virtual int step_count() const = 0;
  // Environment parameters as key/value pairs for run manifests.
  virtual std::vector<std::pair<std::string, std::string>> describe() const = 0;
};

std::unique_ptr<Env> make_env(std::string_view name, const EnvConfig& config = {});
std::vector<std::string> env_names();

Vector clip_action(const Vector& action, const EnvSpec& spec);
void validate_action(const Vector& action, const EnvSpec& spec);
double wrap_angle(double x);

}  // namespace sarc::envs
