#include "sarc/policy/deterministic.hpp"

#include <algorithm>
#include <stdexcept>

namespace sarc::policy {

DeterministicActor::DeterministicActor(int obs_dim, const std::vector<int>& hidden_sizes,
                                       ActionMap map, Rng& init_rng)
    : map_(std::move(map)) {
  std::vector<int> sizes{obs_dim};
  sizes.insert(sizes.end(), hidden_sizes.begin(), hidden_sizes.end());
  sizes.push_back(map_.dim());
  net_ = nnet::Mlp::init(sizes, nnet::Activation::ReLU, nnet::Activation::Tanh, init_rng);
}

DeterministicActor::DeterministicActor(nnet::Mlp net, ActionMap map)
    : net_(std::move(net)), map_(std::move(map)) {
  if (net_.output_size() != map_.dim() || net_.output_activation() != nnet::Activation::Tanh)
    throw std::invalid_argument("DeterministicActor: network must emit act_dim tanh outputs");
}

Matrix DeterministicActor::normalized(const Matrix& states, nnet::ForwardCache* cache) const {
  return net_.forward(states, cache);
}

Matrix DeterministicActor::deterministic_action(const Matrix& states) const {
  return map_.apply(normalized(states));
}

Vector DeterministicActor::deterministic_action(const Vector& state) const {
  return deterministic_action(Matrix(state.transpose())).row(0).transpose();
}

Vector DeterministicActor::noisy_action(const Vector& state, double noise_std, Rng& rng) const {
  Matrix x = normalized(Matrix(state.transpose()));
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    x(0, j) = std::clamp(x(0, j) + noise_std * rng.normal(), -1.0, 1.0);
  return map_.apply(x).row(0).transpose();
}

nnet::Params DeterministicActor::backward(const nnet::ForwardCache& cache,
                                          const Matrix& action_grad) const {
  // d action / d tanh-output = scale; tanh itself is the network's output layer.
  return net_.backward(cache, action_grad * map_.scale.asDiagonal()).gradients;
}

}  // namespace sarc::policy
