#include "sarc/envs/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sarc/common/rng.hpp"

namespace sarc::envs {

Pendulum::Pendulum(const EnvConfig& config) : config_(config) {
  spec_.name = "pendulum-swingup";
  spec_.obs_dim = 3;
  spec_.act_dim = 1;
  spec_.action_low = Vector::Constant(1, -kMaxTorque);
  spec_.action_high = Vector::Constant(1, kMaxTorque);
  spec_.max_episode_steps =
      config.max_episode_steps > 0 ? config.max_episode_steps : kDefaultHorizon;
}

Vector Pendulum::reset(std::uint64_t seed) {
  Rng rng(seed);
  theta_ = rng.uniform(-std::numbers::pi, std::numbers::pi);
  omega_ = rng.uniform(-1.0, 1.0);
  steps_ = 0;
  return observation();
}

void Pendulum::set_state(double theta, double omega) {
  theta_ = theta;
  omega_ = omega;
}

double Pendulum::energy() const {
  return 0.5 * omega_ * omega_ + 3.0 * kGravity / (2.0 * kLength) * std::cos(theta_);
}

Vector Pendulum::observation() const {
  Vector obs(3);
  obs << std::cos(theta_), std::sin(theta_), omega_;
  return obs;
}

StepResult Pendulum::step(const Vector& action) {
  validate_action(action, spec_);
  if (steps_ >= spec_.max_episode_steps)
    throw std::logic_error("pendulum-swingup: step() after time limit without reset()");
  const double u = std::clamp(action[0], -kMaxTorque, kMaxTorque);

  const double angle_error = wrap_angle(theta_);
  const double cost = angle_error * angle_error + 0.1 * omega_ * omega_ + 0.001 * u * u;

  const double accel = 3.0 * kGravity / (2.0 * kLength) * std::sin(theta_) +
                       3.0 / (kMass * kLength * kLength) * u;
  omega_ = std::clamp(omega_ + accel * kDt, -kMaxSpeed, kMaxSpeed);
  theta_ = wrap_angle(theta_ + omega_ * kDt);
  ++steps_;

  StepResult r;
  r.observation = observation();
  r.reward = -cost;
  r.terminal = false;
  r.truncated = steps_ >= spec_.max_episode_steps;
  return r;
}

std::unique_ptr<Env> Pendulum::clone() const { return std::make_unique<Pendulum>(config_); }

std::vector<std::pair<std::string, std::string>> Pendulum::describe() const {
  return {{"gravity", "9.81"},        {"mass", "1"},
          {"length", "1"},            {"dt", "0.05"},
          {"max_torque", "2"},        {"max_speed", "8"},
          {"integrator", "semi-implicit-euler"},
          {"max_episode_steps", std::to_string(spec_.max_episode_steps)}};
}

}  // namespace sarc::envs
