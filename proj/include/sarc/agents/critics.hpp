#pragma once

#include <vector>

#include "sarc/common/rng.hpp"
#include "sarc/nnet/mlp.hpp"

namespace sarc::agents {

using nnet::Matrix;
using nnet::Mlp;
using nnet::Vector;

// Twin soft Q-functions Q(s, a) -> scalar with their Polyak targets and the
// previous-step snapshots read by the retrospective regularizer.
struct CriticPair {
  Mlp q1, q2;
  Mlp q1_targ, q2_targ;
  Mlp q1_prev, q2_prev;

  CriticPair() = default;
  // Targets and snapshots start equal to the freshly initialized critics.
  CriticPair(int obs_dim, int act_dim, const std::vector<int>& hidden_sizes, Rng& init_rng);

  void sync_previous() {
    q1_prev = nnet::snapshot(q1);
    q2_prev = nnet::snapshot(q2);
  }
};

Mlp make_critic(int obs_dim, int act_dim, const std::vector<int>& hidden_sizes, Rng& init_rng);

// Row-wise [s | a].
Matrix critic_input(const Matrix& states, const Matrix& actions);

// Q(s, a) as a column vector.
Vector q_values(const Mlp& critic, const Matrix& input);

}  // namespace sarc::agents
