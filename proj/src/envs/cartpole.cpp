#include "sarc/envs/cartpole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sarc/common/rng.hpp"

namespace sarc::envs {

CartpoleSwingup::CartpoleSwingup(const EnvConfig& config) : config_(config) {
  spec_.name = "cartpole-swingup";
  spec_.obs_dim = 5;
  spec_.act_dim = 1;
  spec_.action_low = Vector::Constant(1, -1.0);
  spec_.action_high = Vector::Constant(1, 1.0);
  spec_.max_episode_steps =
      config.max_episode_steps > 0 ? config.max_episode_steps : kDefaultHorizon;
}

Vector CartpoleSwingup::reset(std::uint64_t seed) {
  Rng rng(seed);
  x_ = rng.uniform(-0.1, 0.1);
  x_dot_ = rng.uniform(-0.1, 0.1);
  theta_ = wrap_angle(std::numbers::pi + rng.uniform(-0.1, 0.1));
  theta_dot_ = rng.uniform(-0.1, 0.1);
  steps_ = 0;
  return observation();
}

Vector CartpoleSwingup::observation() const {
  Vector obs(5);
  obs << x_, x_dot_, std::cos(theta_), std::sin(theta_), theta_dot_;
  return obs;
}

StepResult CartpoleSwingup::step(const Vector& action) {
  validate_action(action, spec_);
  if (steps_ >= spec_.max_episode_steps)
    throw std::logic_error("cartpole-swingup: step() after time limit without reset()");
  const double u = std::clamp(action[0], -1.0, 1.0);
  const double force = kForceScale * u;

  const double total_mass = kCartMass + kPoleMass;
  const double pole_ml = kPoleMass * kHalfPoleLength;
  const double cos_t = std::cos(theta_);
  const double sin_t = std::sin(theta_);
  const double temp = (force + pole_ml * theta_dot_ * theta_dot_ * sin_t) / total_mass;
  const double theta_acc =
      (kGravity * sin_t - cos_t * temp) /
      (kHalfPoleLength * (4.0 / 3.0 - kPoleMass * cos_t * cos_t / total_mass));
  const double x_acc = temp - pole_ml * theta_acc * cos_t / total_mass;

  x_dot_ += kDt * x_acc;
  theta_dot_ = std::clamp(theta_dot_ + kDt * theta_acc, -kMaxThetaDot, kMaxThetaDot);
  x_ += kDt * x_dot_;
  theta_ = wrap_angle(theta_ + kDt * theta_dot_);
  if (x_ > kTrackLimit || x_ < -kTrackLimit) {
    x_ = std::clamp(x_, -kTrackLimit, kTrackLimit);
    x_dot_ = 0.0;
  }
  ++steps_;

  StepResult r;
  r.observation = observation();
  r.reward = 0.5 * (1.0 + std::cos(theta_)) - 0.01 * u * u - 0.05 * x_ * x_;
  r.terminal = false;
  r.truncated = steps_ >= spec_.max_episode_steps;
  return r;
}

std::unique_ptr<Env> CartpoleSwingup::clone() const {
  return std::make_unique<CartpoleSwingup>(config_);
}

std::vector<std::pair<std::string, std::string>> CartpoleSwingup::describe() const {
  return {{"gravity", "9.81"},
          {"cart_mass", "1"},
          {"pole_mass", "0.1"},
          {"half_pole_length", "0.5"},
          {"force_scale", "10"},
          {"dt", "0.02"},
          {"track_limit", "2.4"},
          {"max_episode_steps", std::to_string(spec_.max_episode_steps)}};
}

}  // namespace sarc::envs
