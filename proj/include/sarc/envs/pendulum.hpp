#pragma once

#include "sarc/envs/env.hpp"

namespace sarc::envs {

// Torque-limited pendulum swing-up. theta = 0 is upright; a uniform rod
// pivoting at one end, so theta_ddot = 3g/(2l) sin(theta) + 3u/(m l^2).
// Semi-implicit Euler: omega is advanced first and clamped to +-max_speed,
// then theta advances with the new omega and is wrapped to [-pi, pi).
//
// Observation (cos theta, sin theta, omega); action u in [-2, 2].
// Reward on the pre-step state: -(wrap(theta)^2 + 0.1 omega^2 + 0.001 u^2).
// Reset: theta ~ U[-pi, pi], omega ~ U[-1, 1]. No terminal states.
class Pendulum final : public Env {
 public:
  static constexpr double kGravity = 9.81;
  static constexpr double kMass = 1.0;
  static constexpr double kLength = 1.0;
  static constexpr double kDt = 0.05;
  static constexpr double kMaxTorque = 2.0;
  static constexpr double kMaxSpeed = 8.0;
  static constexpr int kDefaultHorizon = 200;

  explicit Pendulum(const EnvConfig& config = {});

  const EnvSpec& spec() const override { return spec_; }
  Vector reset(std::uint64_t seed) override;
  StepResult step(const Vector& action) override;
  std::unique_ptr<Env> clone() const override;
  int step_count() const override { return steps_; }
  std::vector<std::pair<std::string, std::string>> describe() const override;

  double theta() const { return theta_; }
  double omega() const { return omega_; }
  void set_state(double theta, double omega);
  // Mechanical energy per unit inertia: 0.5 omega^2 + (3g/2l) cos(theta).
  double energy() const;
  Vector observation() const;

 private:
  EnvConfig config_;
  EnvSpec spec_;
  double theta_ = 0.0;
  double omega_ = 0.0;
  int steps_ = 0;
};

}  // namespace sarc::envs
