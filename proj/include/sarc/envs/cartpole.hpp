#pragma once

#include "sarc/envs/env.hpp"

namespace sarc::envs {

// Cart-pole swing-up (theta = 0 upright, pole starts hanging near theta = pi).
// Classic Barto/Sutton cart-pole equations with a force-scaled action,
// semi-implicit Euler at kDt. The cart is confined to |x| <= kTrackLimit;
// hitting a wall zeroes the cart velocity.
//
// Observation (x, x_dot, cos theta, sin theta, theta_dot); action in [-1, 1]
// scaled by kForceScale newtons. Reward on the post-step state:
//   0.5 (1 + cos theta) - 0.01 u^2 - 0.05 x^2,   u the unscaled action,
// which lies in [-0.01 - 0.05 kTrackLimit^2, 1]. 500-step episodes.
class CartpoleSwingup final : public Env {
 public:
  static constexpr double kGravity = 9.81;
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.1;
  static constexpr double kHalfPoleLength = 0.5;
  static constexpr double kForceScale = 10.0;
  static constexpr double kDt = 0.02;
  static constexpr double kTrackLimit = 2.4;
  static constexpr double kMaxThetaDot = 20.0;
  static constexpr int kDefaultHorizon = 500;

  explicit CartpoleSwingup(const EnvConfig& config = {});

  const EnvSpec& spec() const override { return spec_; }
  Vector reset(std::uint64_t seed) override;
  StepResult step(const Vector& action) override;
  std::unique_ptr<Env> clone() const override;
  int step_count() const override { return steps_; }
  std::vector<std::pair<std::string, std::string>> describe() const override;

  Vector observation() const;

 private:
  EnvConfig config_;
  EnvSpec spec_;
  double x_ = 0.0, x_dot_ = 0.0, theta_ = 0.0, theta_dot_ = 0.0;
  int steps_ = 0;
};

}  // namespace sarc::envs
