#pragma once

#include <cstdint>

#include "sarc/nnet/mlp.hpp"

namespace sarc::nnet {

struct AdamState {
  Params first_moment;
  Params second_moment;
  std::uint64_t step_count = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState for_network(const Mlp& mlp);
};

// Bias-corrected Adam step applied in place. Throws std::runtime_error before
// touching any parameter if a gradient entry is non-finite.
void adam_step(Mlp& mlp, const Params& gradients, AdamState& state, double learning_rate);

}  // namespace sarc::nnet
