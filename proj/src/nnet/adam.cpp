#include "sarc/nnet/adam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sarc::nnet {

AdamState AdamState::for_network(const Mlp& mlp) {
  AdamState s;
  s.first_moment = Params::zeros_like(mlp.params());
  s.second_moment = Params::zeros_like(mlp.params());
  return s;
}

namespace {

template <typename P, typename G>
void update_block(P& param, const G& grad, P& m, P& v, double beta1, double beta2, double lr_t,
                  double eps_t) {
  m = beta1 * m + (1.0 - beta1) * grad;
  v = beta2 * v + (1.0 - beta2) * grad.cwiseProduct(grad);
  param.array() -= lr_t * m.array() / (v.array().sqrt() + eps_t);
}

}  // namespace

void adam_step(Mlp& mlp, const Params& gradients, AdamState& state, double learning_rate) {
  if (!mlp.params().same_shape(gradients) || !state.first_moment.same_shape(gradients) ||
      !state.second_moment.same_shape(gradients))
    throw std::invalid_argument("adam_step: gradient/state shape does not match network");
  for (std::size_t k = 0; k < gradients.weights.size(); ++k) {
    if (!gradients.weights[k].allFinite() || !gradients.biases[k].allFinite())
      throw std::runtime_error("adam_step: non-finite gradient in layer " + std::to_string(k) +
                               " (step " + std::to_string(state.step_count) + ")");
  }

  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);
  // lr * m_hat / (sqrt(v_hat) + eps) rewritten on the raw moments.
  const double sqrt_bc2 = std::sqrt(bc2);
  const double lr_t = learning_rate * sqrt_bc2 / bc1;
  const double eps_t = state.epsilon * sqrt_bc2;

  Params& p = mlp.mutable_params();
  for (std::size_t k = 0; k < p.weights.size(); ++k) {
    update_block(p.weights[k], gradients.weights[k], state.first_moment.weights[k],
                 state.second_moment.weights[k], state.beta1, state.beta2, lr_t, eps_t);
    update_block(p.biases[k], gradients.biases[k], state.first_moment.biases[k],
                 state.second_moment.biases[k], state.beta1, state.beta2, lr_t, eps_t);
  }
}

}  // namespace sarc::nnet
