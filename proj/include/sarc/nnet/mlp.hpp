#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sarc/common/rng.hpp"
#include "sarc/nnet/matrix.hpp"

namespace sarc::nnet {

enum class Activation { Identity, ReLU, Tanh };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view name);

// Weights and biases of a dense network, layer by layer. Also used as the
// container for gradients and optimizer moments, which share the same shapes.
struct Params {
  std::vector<Matrix> weights;  // weights[k]: layer_sizes[k+1] x layer_sizes[k]
  std::vector<Vector> biases;   // biases[k]: layer_sizes[k+1]

  static Params zeros_like(const Params& other);
  bool same_shape(const Params& other) const;
  std::size_t parameter_count() const;
  bool all_finite() const;

  Params& operator+=(const Params& other);
  Params& operator*=(double s);
  bool operator==(const Params& other) const;
};

// Per-layer intermediates from one forward pass, consumed by backward().
struct ForwardCache {
  std::vector<Matrix> activations;      // activations[0] is the input batch
  std::vector<Matrix> pre_activations;  // one per layer
  std::uint64_t generation = 0;
  std::vector<int> layer_sizes;
};

struct BackwardResult {
  Params gradients;
  Matrix input_gradient;
};

// Fully-connected network: hidden layers share one activation, the last layer
// has its own. ReLU uses subgradient 0 at 0.
class Mlp {
 public:
  Mlp() = default;
  Mlp(std::vector<int> layer_sizes, Activation hidden, Activation output);

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases.
  static Mlp init(const std::vector<int>& layer_sizes, Activation hidden, Activation output,
                  Rng& rng);

  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  std::size_t layer_count() const { return params_.weights.size(); }
  int input_size() const { return layer_sizes_.front(); }
  int output_size() const { return layer_sizes_.back(); }
  Activation hidden_activation() const { return hidden_; }
  Activation output_activation() const { return output_; }

  const Params& params() const { return params_; }
  // Mutable access invalidates outstanding forward caches.
  Params& mutable_params() {
    ++generation_;
    return params_;
  }

  Matrix forward(const Matrix& input, ForwardCache* cache = nullptr) const;
  // Gradients of a scalar loss given dLoss/dOutput; the caller folds any batch
  // averaging into output_gradient.
  BackwardResult backward(const ForwardCache& cache, const Matrix& output_gradient) const;
  // Only dLoss/dInput; skips the parameter gradients.
  Matrix backward_input(const ForwardCache& cache, const Matrix& output_gradient) const;

  bool same_shape(const Mlp& other) const;
  bool operator==(const Mlp& other) const;

 private:
  void check_cache(const ForwardCache& cache, const Matrix& output_gradient) const;

  std::vector<int> layer_sizes_;
  Params params_;
  Activation hidden_ = Activation::ReLU;
  Activation output_ = Activation::Identity;
  std::uint64_t generation_ = 0;
};

// target <- rho * target + (1 - rho) * main
void polyak_update(Mlp& target, const Mlp& main, double rho);

// Deep copy; value semantics make this an ordinary copy, named for intent.
inline Mlp snapshot(const Mlp& mlp) { return mlp; }

}  // namespace sarc::nnet
