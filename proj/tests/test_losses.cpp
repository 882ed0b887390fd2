#include <gtest/gtest.h>

#include <cmath>

#include "sarc/agents/losses.hpp"

using namespace sarc;
using namespace sarc::agents;
using nnet::Activation;
using policy::SquashedGaussianActor;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

// Critic with all weights zero: outputs `value` everywhere.
Mlp constant_critic(int in, double value) {
  Mlp net({in, 4, 1}, Activation::ReLU, Activation::Identity);
  for (auto& w : net.mutable_params().weights) w.setZero();
  for (auto& b : net.mutable_params().biases) b.setZero();
  net.mutable_params().biases[1](0) = value;
  return net;
}

// Critic computing exactly the first input column: Q = x_0.
Mlp identity_critic(int in) {
  Mlp net({in, 1}, Activation::Identity, Activation::Identity);
  net.mutable_params().weights[0].setZero();
  net.mutable_params().weights[0](0, 0) = 1.0;
  net.mutable_params().biases[0].setZero();
  return net;
}

}  // namespace

TEST(SoftTarget, WorkedExample) {
  const Vector y = soft_bellman_target(vec({1.0}), vec({0.0}), vec({2.0}), vec({2.5}),
                                       vec({-1.0}), 0.2, 0.99);
  EXPECT_NEAR(y[0], 3.178, 1e-12);
}

TEST(SoftTarget, TerminalAndZeroDiscountGiveReward) {
  const Vector r = vec({0.5, -2.0});
  const Vector q = vec({100.0, -7.0});
  const Vector lp = vec({3.0, -4.0});
  EXPECT_EQ(soft_bellman_target(r, vec({1.0, 1.0}), q, q, lp, 0.2, 0.99), r);
  EXPECT_EQ(soft_bellman_target(r, vec({0.0, 0.0}), q, q, lp, 0.2, 0.0), r);
}

TEST(SoftTarget, MinIsSymmetric) {
  Rng rng(1);
  const Vector r = random_matrix(20, 1, rng), a = random_matrix(20, 1, rng),
               b = random_matrix(20, 1, rng), lp = random_matrix(20, 1, rng);
  const Vector d = Vector::Zero(20);
  EXPECT_EQ(soft_bellman_target(r, d, a, b, lp, 0.3, 0.9),
            soft_bellman_target(r, d, b, a, lp, 0.3, 0.9));
}

TEST(SoftTarget, BatchTargetUsesSmallerTargetCritic) {
  Rng init(2);
  const SquashedGaussianActor actor(2, {8}, policy::ActionMap::from_bounds(
                                               Vector::Constant(1, -1), Vector::Constant(1, 1)),
                                    init);
  CriticPair critics(2, 1, {4}, init);
  critics.q1_targ = constant_critic(3, 1.0);
  critics.q2_targ = constant_critic(3, 3.0);
  replay::Batch batch;
  batch.s_next = Matrix::Zero(3, 2);
  batch.r = vec({0.0, 1.0, 2.0});
  batch.d = vec({0.0, 0.0, 1.0});
  Rng r1(5), r2(5);
  const Vector y = compute_critic_target(batch, actor, critics, 0.0, 0.5, r1);
  EXPECT_DOUBLE_EQ(y[0], 0.5);
  EXPECT_DOUBLE_EQ(y[1], 1.5);
  EXPECT_DOUBLE_EQ(y[2], 2.0);
  std::swap(critics.q1_targ, critics.q2_targ);
  EXPECT_EQ(compute_critic_target(batch, actor, critics, 0.0, 0.5, r2), y);
}

TEST(CriticLosses, MseWorkedExample) {
  EXPECT_DOUBLE_EQ(mse_value(vec({1.0, 3.0}), vec({0.0, 0.0})), 5.0);
  const Mlp q = identity_critic(2);
  Matrix x(2, 2);
  x << 1.0, 0.0, 3.0, 0.0;
  EXPECT_DOUBLE_EQ(mse_critic_loss(q, x, vec({0.0, 0.0})).loss, 5.0);
}

TEST(CriticLosses, PerfectFitHasZeroLossAndGradient) {
  Rng rng(3);
  const Mlp q = make_critic(3, 1, {8}, rng);
  const Matrix x = random_matrix(6, 4, rng);
  const Vector y = q_values(q, x);
  const auto lg = mse_critic_loss(q, x, y);
  EXPECT_EQ(lg.loss, 0.0);
  for (const auto& w : lg.gradients.weights) EXPECT_EQ(w.cwiseAbs().maxCoeff(), 0.0);
}

TEST(CriticLosses, RetrospectiveWorkedExamples) {
  EXPECT_DOUBLE_EQ(retrospective_value(vec({1.0}), vec({0.5}), vec({0.0}), 2.0), 0.5);
  EXPECT_DOUBLE_EQ(retrospective_value(vec({2.0, 0.0}), vec({1.0, -1.0}), vec({3.0, -1.0}), 2.0),
                   1.0);
  EXPECT_DOUBLE_EQ(retrospective_value(vec({2.0}), vec({1.0}), vec({3.0}), 2.0), -1.0);
  EXPECT_EQ(retrospective_value(vec({4.0}), vec({4.0}), vec({4.0}), 2.0), 0.0);
}

TEST(CriticLosses, RetrospectiveGradientSigns) {
  // current below target and above previous: -(k+1) - k per row, over n.
  const Vector g = retrospective_gradient(vec({1.0, 1.0}), vec({0.5, 1.0}), vec({0.0, 1.0}), 2.0);
  EXPECT_DOUBLE_EQ(g[0], (-3.0 - 2.0) / 2.0);
  EXPECT_EQ(g[1], 0.0);
}

TEST(CriticLosses, RegularizerThroughNetwork) {
  const Mlp q = identity_critic(2);
  Mlp prev = identity_critic(2);
  prev.mutable_params().weights[0].setZero();
  Matrix x(1, 2);
  x << 0.5, 0.0;
  const auto lg = retrospective_regularizer(q, prev, x, vec({1.0}), 2.0);
  EXPECT_DOUBLE_EQ(lg.loss, 0.5);
  // dL/dQ = -3 - 2 = -5, dQ/dw00 = x0 = 0.5
  EXPECT_DOUBLE_EQ(lg.gradients.weights[0](0, 0), -2.5);
  EXPECT_DOUBLE_EQ(lg.gradients.biases[0](0), -5.0);
}

TEST(CriticLosses, LambdaZeroIsBitwiseMse) {
  Rng rng(4);
  const Mlp q = make_critic(3, 2, {16, 16}, rng);
  const Mlp prev = make_critic(3, 2, {16, 16}, rng);
  const Matrix x = random_matrix(10, 5, rng);
  const Vector y = random_matrix(10, 1, rng);
  const auto total = total_retrospective_loss(q, prev, x, y, 2.0, 0.0);
  const auto mse = mse_critic_loss(q, x, y);
  EXPECT_EQ(total.total, mse.loss);
  EXPECT_EQ(total.mse, mse.loss);
  EXPECT_EQ(total.weighted_ret, 0.0);
  EXPECT_EQ(total.gradients, mse.gradients);
}

TEST(CriticLosses, TotalIsSumOfComponents) {
  Rng rng(5);
  const Mlp q = make_critic(3, 2, {16}, rng);
  const Mlp prev = make_critic(3, 2, {16}, rng);
  const Matrix x = random_matrix(10, 5, rng);
  const Vector y = random_matrix(10, 1, rng);
  const double lambda = 0.7;
  const auto total = total_retrospective_loss(q, prev, x, y, 2.0, lambda);
  const auto mse = mse_critic_loss(q, x, y);
  const auto ret = retrospective_regularizer(q, prev, x, y, 2.0);
  EXPECT_NEAR(total.total, mse.loss + lambda * ret.loss, 1e-12);
  EXPECT_NEAR(total.weighted_ret, lambda * ret.loss, 1e-12);
  nnet::Params sum = ret.gradients;
  sum *= lambda;
  sum += mse.gradients;
  for (std::size_t k = 0; k < sum.weights.size(); ++k) {
    EXPECT_TRUE(total.gradients.weights[k].isApprox(sum.weights[k], 1e-12));
    EXPECT_TRUE(total.gradients.biases[k].isApprox(sum.biases[k], 1e-12));
  }
}

TEST(CriticLosses, GradientsMatchFiniteDifferences) {
  Rng rng(6);
  const Mlp q = make_critic(3, 2, {12, 12}, rng);
  const Mlp prev = make_critic(3, 2, {12, 12}, rng);
  const Matrix x = random_matrix(8, 5, rng);
  const Vector y = random_matrix(8, 1, rng);
  EXPECT_LT(nnet::grad_check(q, [&](const Mlp& m) { return mse_critic_loss(m, x, y); })
                .max_relative_error,
            1e-6);
  EXPECT_LT(nnet::grad_check(q, [&](const Mlp& m) {
              return retrospective_regularizer(m, prev, x, y, 2.0);
            }).max_relative_error,
            1e-4);
  EXPECT_LT(nnet::grad_check(q, [&](const Mlp& m) {
              const auto c = total_retrospective_loss(m, prev, x, y, 2.0, 1.0);
              return nnet::LossAndGrad{c.total, c.gradients};
            }).max_relative_error,
            1e-4);
}

TEST(CriticLosses, PreviousNetworkChangesValueNotGradientPath) {
  Rng rng(7);
  const Mlp q = make_critic(3, 2, {12}, rng);
  Mlp prev = make_critic(3, 2, {12}, rng);
  const Matrix x = random_matrix(8, 5, rng);
  const Vector y = random_matrix(8, 1, rng);
  const auto before = total_retrospective_loss(q, prev, x, y, 2.0, 1.0);
  prev.mutable_params().biases.back()(0) += 10.0;
  const auto after = total_retrospective_loss(q, prev, x, y, 2.0, 1.0);
  EXPECT_NE(before.total, after.total);
  // The returned gradient has the critic's shape only; nothing is produced
  // for prev, and the critic gradient is still the exact derivative.
  EXPECT_TRUE(after.gradients.same_shape(q.params()));
  EXPECT_LT(nnet::grad_check(q, [&](const Mlp& m) {
              const auto c = total_retrospective_loss(m, prev, x, y, 2.0, 1.0);
              return nnet::LossAndGrad{c.total, c.gradients};
            }).max_relative_error,
            1e-4);
}

TEST(ActorLosses, GradientMatchesFiniteDifferences) {
  Rng init(8);
  const auto map = policy::ActionMap::from_bounds(Vector::Constant(2, -2), Vector::Constant(2, 2));
  const SquashedGaussianActor actor(3, {12, 12}, map, init);
  const CriticPair critics(3, 2, {12, 12}, init);
  Rng rng(9);
  const Matrix states = random_matrix(7, 3, rng);
  const Matrix noise = random_matrix(7, 2, rng);
  const auto res = nnet::grad_check(actor.net(), [&](const Mlp& net) {
    const SquashedGaussianActor a(net, map);
    const auto l = actor_loss_with_noise(a, critics, states, 0.2, noise);
    return nnet::LossAndGrad{l.loss, l.gradients};
  });
  EXPECT_LT(res.max_relative_error, 1e-4);
}

TEST(ActorLosses, ConstantCriticsAndZeroAlpha) {
  Rng init(10);
  const auto map = policy::ActionMap::from_bounds(Vector::Constant(1, -1), Vector::Constant(1, 1));
  const SquashedGaussianActor actor(2, {8}, map, init);
  CriticPair critics(2, 1, {4}, init);
  critics.q1 = constant_critic(3, 4.0);
  critics.q2 = constant_critic(3, 6.0);
  Rng rng(11);
  const Matrix states = random_matrix(5, 2, rng);
  const Matrix noise = random_matrix(5, 1, rng);
  const auto l = actor_loss_with_noise(actor, critics, states, 0.0, noise);
  EXPECT_DOUBLE_EQ(l.loss, -4.0);
  for (const auto& w : l.gradients.weights) EXPECT_EQ(w.cwiseAbs().maxCoeff(), 0.0);
}

TEST(ActorLosses, LinearInAlpha) {
  Rng init(12);
  const auto map = policy::ActionMap::from_bounds(Vector::Constant(1, -1), Vector::Constant(1, 1));
  const SquashedGaussianActor actor(2, {8}, map, init);
  const CriticPair critics(2, 1, {8}, init);
  Rng rng(13);
  const Matrix states = random_matrix(5, 2, rng);
  const Matrix noise = random_matrix(5, 1, rng);
  const auto l0 = actor_loss_with_noise(actor, critics, states, 0.0, noise);
  const auto l1 = actor_loss_with_noise(actor, critics, states, 0.3, noise);
  const auto l2 = actor_loss_with_noise(actor, critics, states, 0.6, noise);
  EXPECT_NEAR(l2.loss - l0.loss, 2.0 * (l1.loss - l0.loss), 1e-12);
  EXPECT_NEAR(l1.loss - l0.loss, 0.3 * l1.mean_log_prob, 1e-12);
}

TEST(ActorLosses, DeterministicGradientMatchesFiniteDifferences) {
  Rng init(14);
  const auto map = policy::ActionMap::from_bounds(Vector::Constant(2, -2), Vector::Constant(2, 2));
  const policy::DeterministicActor actor(3, {12}, map, init);
  const Mlp critic = make_critic(3, 2, {12}, init);
  Rng rng(15);
  const Matrix states = random_matrix(6, 3, rng);
  const auto res = nnet::grad_check(actor.net(), [&](const Mlp& net) {
    const policy::DeterministicActor a(net, map);
    const auto l = deterministic_actor_loss(a, critic, states);
    return nnet::LossAndGrad{l.loss, l.gradients};
  });
  EXPECT_LT(res.max_relative_error, 1e-4);
}
