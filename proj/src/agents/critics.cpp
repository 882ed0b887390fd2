#include "sarc/agents/critics.hpp"

#include <stdexcept>

namespace sarc::agents {

Mlp make_critic(int obs_dim, int act_dim, const std::vector<int>& hidden_sizes, Rng& init_rng) {
  std::vector<int> sizes{obs_dim + act_dim};
  sizes.insert(sizes.end(), hidden_sizes.begin(), hidden_sizes.end());
  sizes.push_back(1);
  return Mlp::init(sizes, nnet::Activation::ReLU, nnet::Activation::Identity, init_rng);
}

CriticPair::CriticPair(int obs_dim, int act_dim, const std::vector<int>& hidden_sizes,
                       Rng& init_rng)
    : q1(make_critic(obs_dim, act_dim, hidden_sizes, init_rng)),
      q2(make_critic(obs_dim, act_dim, hidden_sizes, init_rng)),
      q1_targ(q1),
      q2_targ(q2),
      q1_prev(q1),
      q2_prev(q2) {}

Matrix critic_input(const Matrix& states, const Matrix& actions) {
  if (states.rows() != actions.rows())
    throw std::invalid_argument("critic_input: state/action row counts differ");
  Matrix x(states.rows(), states.cols() + actions.cols());
  x << states, actions;
  return x;
}

Vector q_values(const Mlp& critic, const Matrix& input) {
  return critic.forward(input).col(0);
}

}  // namespace sarc::agents
