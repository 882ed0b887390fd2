#pragma once

#include "sarc/envs/env.hpp"

namespace sarc::envs {

// Overdamped 2-D point mass in the square [-1, 1]^2: velocity is proportional
// to the applied force (position += kGain * kDt * force), and the position is
// clamped to the square. Observation (x, y, target_x - x, target_y - y);
// action force in [-1, 1]^2. Reward after the move: -|target - position|,
// bounded below by -kMaxDistance = -2 sqrt(2). Reset: position and target
// each uniform in the square. No terminal states; 150-step episodes.
class PointReacher final : public Env {
 public:
  static constexpr double kDt = 0.05;
  static constexpr double kGain = 2.0;
  static constexpr double kHalfWidth = 1.0;
  static constexpr double kMaxDistance = 2.8284271247461903;
  static constexpr int kDefaultHorizon = 150;

  explicit PointReacher(const EnvConfig& config = {});

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
  double x_ = 0.0, y_ = 0.0;
  double tx_ = 0.0, ty_ = 0.0;
  int steps_ = 0;
};

}  // namespace sarc::envs
