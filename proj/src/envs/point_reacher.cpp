#include "sarc/envs/point_reacher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sarc/common/rng.hpp"

namespace sarc::envs {

PointReacher::PointReacher(const EnvConfig& config) : config_(config) {
  spec_.name = "point-reacher";
  spec_.obs_dim = 4;
  spec_.act_dim = 2;
  spec_.action_low = Vector::Constant(2, -1.0);
  spec_.action_high = Vector::Constant(2, 1.0);
  spec_.max_episode_steps =
      config.max_episode_steps > 0 ? config.max_episode_steps : kDefaultHorizon;
}

Vector PointReacher::reset(std::uint64_t seed) {
  Rng rng(seed);
  x_ = rng.uniform(-kHalfWidth, kHalfWidth);
  y_ = rng.uniform(-kHalfWidth, kHalfWidth);
  tx_ = rng.uniform(-kHalfWidth, kHalfWidth);
  ty_ = rng.uniform(-kHalfWidth, kHalfWidth);
  steps_ = 0;
  return observation();
}

Vector PointReacher::observation() const {
  Vector obs(4);
  obs << x_, y_, tx_ - x_, ty_ - y_;
  return obs;
}

StepResult PointReacher::step(const Vector& action) {
  validate_action(action, spec_);
  if (steps_ >= spec_.max_episode_steps)
    throw std::logic_error("point-reacher: step() after time limit without reset()");
  const Vector f = clip_action(action, spec_);
  x_ = std::clamp(x_ + kGain * kDt * f[0], -kHalfWidth, kHalfWidth);
  y_ = std::clamp(y_ + kGain * kDt * f[1], -kHalfWidth, kHalfWidth);
  ++steps_;

  StepResult r;
  r.observation = observation();
  r.reward = -std::hypot(tx_ - x_, ty_ - y_);
  r.terminal = false;
  r.truncated = steps_ >= spec_.max_episode_steps;
  return r;
}

std::unique_ptr<Env> PointReacher::clone() const {
  return std::make_unique<PointReacher>(config_);
}

std::vector<std::pair<std::string, std::string>> PointReacher::describe() const {
  return {{"dt", "0.05"},
          {"gain", "2"},
          {"arena_half_width", "1"},
          {"max_episode_steps", std::to_string(spec_.max_episode_steps)}};
}

}  // namespace sarc::envs
