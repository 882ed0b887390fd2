#pragma once

#include <vector>

#include "sarc/common/rng.hpp"
#include "sarc/nnet/mlp.hpp"
#include "sarc/policy/action_map.hpp"

namespace sarc::policy {

// mu(s) = scale * tanh(net(s)) + offset. Noise for exploration and target
// smoothing is added in the normalized (-1, 1) space and clipped there.
class DeterministicActor {
 public:
  static constexpr double kDefaultExplorationStd = 0.1;

  DeterministicActor() = default;
  DeterministicActor(int obs_dim, const std::vector<int>& hidden_sizes, ActionMap map,
                     Rng& init_rng);
  DeterministicActor(nnet::Mlp net, ActionMap map);

  // tanh(net(s)), in (-1, 1).
  Matrix normalized(const Matrix& states, nnet::ForwardCache* cache = nullptr) const;
  Matrix deterministic_action(const Matrix& states) const;
  Vector deterministic_action(const Vector& state) const;
  Vector noisy_action(const Vector& state, double noise_std, Rng& rng) const;

  // Parameter gradient given dL/d(action) for a forward pass recorded in cache.
  nnet::Params backward(const nnet::ForwardCache& cache, const Matrix& action_grad) const;

  int obs_dim() const { return net_.input_size(); }
  int act_dim() const { return map_.dim(); }
  const nnet::Mlp& net() const { return net_; }
  nnet::Mlp& mutable_net() { return net_; }
  const ActionMap& action_map() const { return map_; }

 private:
  nnet::Mlp net_;
  ActionMap map_;
};

}  // namespace sarc::policy
