#include <gtest/gtest.h>

#include <cmath>

#include "sarc/eval/aggregate.hpp"
#include "sarc/eval/evaluate.hpp"
#include "toy_env.hpp"

using namespace sarc;
using namespace sarc::eval;
using sarc::testing::ToyEnv;

namespace {

PolicyFn constant_policy(double a) {
  return [a](const Vector&) { return Vector::Constant(1, a); };
}

}  // namespace

TEST(EvalRecord, FromReturns) {
  const auto r = EvalRecord::from_returns(7, {1.0, 2.0, 3.0, 6.0});
  EXPECT_EQ(r.env_step, 7u);
  EXPECT_DOUBLE_EQ(r.mean_return, 3.0);
  EXPECT_NEAR(r.std_return, std::sqrt((4.0 + 1.0 + 0.0 + 9.0) / 4.0), 1e-12);
}

TEST(Evaluate, ZeroRewardEnvironment) {
  ToyEnv env(5, {0.0});
  Rng rng(1);
  const auto r = evaluate_policy(env, constant_policy(0.0), 4, rng);
  EXPECT_EQ(r.mean_return, 0.0);
  EXPECT_EQ(r.std_return, 0.0);
  EXPECT_EQ(r.returns.size(), 4u);
}

TEST(Evaluate, SingleEpisodeHasZeroStd) {
  ToyEnv env(5, {1.0, -2.0});
  Rng rng(2);
  const auto r = evaluate_policy(env, constant_policy(0.5), 1, rng);
  EXPECT_EQ(r.std_return, 0.0);
  EXPECT_DOUBLE_EQ(r.mean_return, 1 - 2 + 1 - 2 + 1 + 5 * 0.5);
}

TEST(Evaluate, SameSeedsSameRecordAndRngOnlyForResets) {
  ToyEnv env(6, {0.3});
  auto policy = [](const Vector& o) { return Vector::Constant(1, std::tanh(o[0])); };
  Rng a(3), b(3);
  const auto x = evaluate_policy(env, policy, 5, a);
  const auto y = evaluate_policy(env, policy, 5, b);
  EXPECT_EQ(x.returns, y.returns);
  Rng c(3);
  for (int i = 0; i < 5; ++i) c.next_seed();
  EXPECT_EQ(a, c);
  EXPECT_EQ(env.resets, 10);
}

TEST(Evaluate, RejectsZeroEpisodes) {
  ToyEnv env(3, {0.0});
  Rng rng(4);
  EXPECT_THROW(evaluate_policy(env, constant_policy(0.0), 0, rng), std::invalid_argument);
}

TEST(QError, MatchesHandComputation) {
  ToyEnv env(3, {1.0, 2.0, 4.0});
  const double gamma = 0.5;
  // Action 0.25 every step: rewards 1.25, 2.25, 4.25.
  const double g0 = 1.25 + 0.5 * 2.25 + 0.25 * 4.25;
  const QFn q = [](const Vector& s, const Vector& a) { return s[0] + a[0]; };
  Rng rng(5), replay_rng(5);
  const auto rec = q_error(env, constant_policy(0.25), q, gamma, 3, rng, 10);
  double expect = 0.0;
  ToyEnv probe(3, {0.0});
  for (int ep = 0; ep < 3; ++ep) {
    const Vector s0 = probe.reset(replay_rng.next_seed());
    const double d = g0 - (s0[0] + 0.25);
    expect += d * d / 3.0;
  }
  EXPECT_EQ(rec.env_step, 10u);
  EXPECT_NEAR(rec.q_error, expect, 1e-12);
}

TEST(QError, ZeroDiscountIsOneStep) {
  ToyEnv env(3, {2.0, 100.0, 100.0});
  const QFn q = [](const Vector&, const Vector&) { return 2.0; };
  Rng rng(6);
  EXPECT_EQ(q_error(env, constant_policy(0.0), q, 0.0, 4, rng).q_error, 0.0);
}

TEST(QError, ExactCriticGivesZero) {
  ToyEnv env(4, {1.0, -1.0, 0.5, 3.0});
  const double gamma = 0.9;
  const double g0 = 1.0 - 0.9 + 0.81 * 0.5 + 0.729 * 3.0;
  const QFn q = [g0](const Vector&, const Vector&) { return g0; };
  Rng rng(7);
  EXPECT_NEAR(q_error(env, constant_policy(0.0), q, gamma, 5, rng).q_error, 0.0, 1e-24);
}

TEST(QError, TwinCriticSymmetry) {
  Rng init(8);
  ToyEnv env(5, {0.1});
  const auto map = policy::ActionMap::from_bounds(env.spec().action_low, env.spec().action_high);
  const policy::SquashedGaussianActor actor(2, {8}, map, init);
  agents::CriticPair critics(2, 1, {8}, init);
  Rng a(9), b(9);
  const double x = q_error(env, actor, critics, 0.9, 3, a).q_error;
  std::swap(critics.q1, critics.q2);
  EXPECT_EQ(q_error(env, actor, critics, 0.9, 3, b).q_error, x);
  EXPECT_GE(x, 0.0);
}

TEST(Aggregate, SingleSeedIsIdentity) {
  const Curve c{{10, 20, 30}, {1.0, -2.0, 5.0}};
  const auto agg = aggregate_seeds({c});
  EXPECT_EQ(agg.env_steps, c.env_steps);
  EXPECT_EQ(agg.mean, c.values);
  EXPECT_EQ(agg.std, (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(Aggregate, TwoConstantSeeds) {
  const auto agg = aggregate_seeds({{{1, 2}, {0.0, 0.0}}, {{1, 2}, {2.0, 2.0}}});
  EXPECT_EQ(agg.mean, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(agg.std, (std::vector<double>{1.0, 1.0}));
}

TEST(Aggregate, PermutationInvariant) {
  Rng rng(10);
  std::vector<Curve> curves(5);
  for (auto& c : curves) {
    for (std::size_t s = 1; s <= 8; ++s) {
      c.env_steps.push_back(s * 100);
      c.values.push_back(rng.normal() * 1e3);
    }
  }
  const auto a = aggregate_seeds(curves);
  std::reverse(curves.begin(), curves.end());
  std::swap(curves[0], curves[2]);
  const auto b = aggregate_seeds(curves);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std, b.std);
}

TEST(Aggregate, RejectsMisalignedOrEmpty) {
  EXPECT_THROW(aggregate_seeds({}), std::invalid_argument);
  EXPECT_THROW(aggregate_seeds({{{1, 2}, {0.0, 0.0}}, {{1, 3}, {0.0, 0.0}}}),
               std::invalid_argument);
  EXPECT_THROW(aggregate_seeds({{{1, 2}, {0.0, 0.0}}, {{1}, {0.0}}}), std::invalid_argument);
}
