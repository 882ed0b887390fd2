#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sarc/common/rng.hpp"
#include "sarc/envs/env.hpp"

namespace sarc::testing {

// 1-D toy task with a fixed horizon. The state is (position, time); the
// reward at step t is rewards[t % rewards.size()] + action. Reset draws the
// start position from the seed. With terminal_at > 0 the episode ends with a
// genuine termination at that step instead of truncating at the horizon.
class ToyEnv final : public envs::Env {
 public:
  ToyEnv(int horizon, std::vector<double> rewards, int terminal_at = 0)
      : rewards_(std::move(rewards)), terminal_at_(terminal_at) {
    spec_.name = "toy";
    spec_.obs_dim = 2;
    spec_.act_dim = 1;
    spec_.action_low = envs::Vector::Constant(1, -1.0);
    spec_.action_high = envs::Vector::Constant(1, 1.0);
    spec_.max_episode_steps = horizon;
  }

  const envs::EnvSpec& spec() const override { return spec_; }

  envs::Vector reset(std::uint64_t seed) override {
    Rng rng(seed);
    position_ = rng.uniform(-1.0, 1.0);
    steps_ = 0;
    ++resets;
    return observation();
  }

  envs::StepResult step(const envs::Vector& action) override {
    envs::validate_action(action, spec_);
    if (steps_ >= spec_.max_episode_steps) throw std::logic_error("toy: past horizon");
    const double a = envs::clip_action(action, spec_)[0];
    envs::StepResult r;
    r.reward = rewards_[static_cast<std::size_t>(steps_) % rewards_.size()] + a;
    position_ += a;
    ++steps_;
    r.observation = observation();
    r.terminal = terminal_at_ > 0 && steps_ == terminal_at_;
    r.truncated = !r.terminal && steps_ >= spec_.max_episode_steps;
    return r;
  }

  std::unique_ptr<envs::Env> clone() const override {
    return std::make_unique<ToyEnv>(spec_.max_episode_steps, rewards_, terminal_at_);
  }
  int step_count() const override { return steps_; }
  std::vector<std::pair<std::string, std::string>> describe() const override {
    return {{"horizon", std::to_string(spec_.max_episode_steps)}};
  }

  envs::Vector observation() const {
    envs::Vector o(2);
    o << position_, static_cast<double>(steps_);
    return o;
  }

  int resets = 0;

 private:
  envs::EnvSpec spec_;
  std::vector<double> rewards_;
  int terminal_at_;
  double position_ = 0.0;
  int steps_ = 0;
};

}  // namespace sarc::testing
