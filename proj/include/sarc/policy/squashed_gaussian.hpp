#pragma once

#include <vector>

#include "sarc/common/rng.hpp"
#include "sarc/nnet/mlp.hpp"
#include "sarc/policy/action_map.hpp"

namespace sarc::policy {

// Everything backward() needs from one reparameterized draw.
struct GaussianSample {
  Matrix action;    // scale * tanh(u) + offset
  Vector log_prob;  // per row, summed over action dims
  Matrix noise;     // epsilon
  Matrix mean;
  Matrix raw_log_std;  // network output before clamping
  Matrix std;
  Matrix pre_tanh;  // u = mean + std * epsilon
  Matrix squashed;  // tanh(u)
  nnet::ForwardCache cache;
};

// pi(a|s): u ~ N(mu(s), sigma(s)^2) per dimension, a = scale * tanh(u) + offset.
// The network emits [mu | log_sigma] as one 2*act_dim output layer, which is
// the same function as a shared trunk with two linear heads.
class SquashedGaussianActor {
 public:
  static constexpr double kLogStdMin = -20.0;
  static constexpr double kLogStdMax = 2.0;

  SquashedGaussianActor() = default;
  SquashedGaussianActor(int obs_dim, const std::vector<int>& hidden_sizes, ActionMap map,
                        Rng& init_rng);
  SquashedGaussianActor(nnet::Mlp net, ActionMap map);

  GaussianSample sample(const Matrix& states, Rng& rng) const;
  // Reparameterized draw with caller-supplied standard-normal noise.
  GaussianSample sample_with_noise(const Matrix& states, const Matrix& noise) const;

  // log density of the squashed action produced by pre-tanh value u.
  Vector log_prob(const Matrix& states, const Matrix& pre_tanh) const;
  double log_prob(const Vector& state, const Vector& pre_tanh) const;

  Matrix deterministic_action(const Matrix& states) const;
  Vector deterministic_action(const Vector& state) const;

  // Parameter gradient of a loss given dL/d(action) and dL/d(log_prob) for
  // a draw, with the noise held fixed.
  nnet::Params backward(const GaussianSample& sample, const Matrix& action_grad,
                        const Vector& log_prob_grad) const;

  int obs_dim() const { return net_.input_size(); }
  int act_dim() const { return map_.dim(); }
  const nnet::Mlp& net() const { return net_; }
  nnet::Mlp& mutable_net() { return net_; }
  const ActionMap& action_map() const { return map_; }

 private:
  void split_heads(const Matrix& out, Matrix& mean, Matrix& raw_log_std) const;

  nnet::Mlp net_;
  ActionMap map_;
};

}  // namespace sarc::policy
