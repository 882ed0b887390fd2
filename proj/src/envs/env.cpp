#include "sarc/envs/env.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sarc/envs/cartpole.hpp"
#include "sarc/envs/pendulum.hpp"
#include "sarc/envs/point_reacher.hpp"

namespace sarc::envs {

std::unique_ptr<Env> make_env(std::string_view name, const EnvConfig& config) {
  if (config.max_episode_steps < 0)
    throw std::invalid_argument("make_env: max_episode_steps must be >= 0");
  if (name == "pendulum-swingup") return std::make_unique<Pendulum>(config);
  if (name == "point-reacher") return std::make_unique<PointReacher>(config);
  if (name == "cartpole-swingup") return std::make_unique<CartpoleSwingup>(config);
  throw std::invalid_argument("make_env: unknown environment '" + std::string(name) + "'");
}

std::vector<std::string> env_names() {
  return {"pendulum-swingup", "point-reacher", "cartpole-swingup"};
}

void validate_action(const Vector& action, const EnvSpec& spec) {
  if (action.size() != spec.act_dim)
    throw std::invalid_argument(spec.name + ": action has " + std::to_string(action.size()) +
                                " entries, expected " + std::to_string(spec.act_dim));
  if (!action.allFinite()) throw std::invalid_argument(spec.name + ": non-finite action");
}

Vector clip_action(const Vector& action, const EnvSpec& spec) {
  return action.cwiseMax(spec.action_low).cwiseMin(spec.action_high);
}

double wrap_angle(double x) {
  constexpr double pi = std::numbers::pi;
  double y = std::fmod(x + pi, 2.0 * pi);
  if (y < 0.0) y += 2.0 * pi;
  return y - pi;
}

}  // namespace sarc::envs
