#include "sarc/nnet/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sarc::nnet {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Identity:
      return "identity";
    case Activation::ReLU:
      return "relu";
    case Activation::Tanh:
      return "tanh";
  }
  return "identity";
}

Activation activation_from_string(std::string_view name) {
  if (name == "identity") return Activation::Identity;
  if (name == "relu") return Activation::ReLU;
  if (name == "tanh") return Activation::Tanh;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

Params Params::zeros_like(const Params& other) {
  Params p;
  p.weights.reserve(other.weights.size());
  p.biases.reserve(other.biases.size());
  for (const auto& w : other.weights) p.weights.push_back(Matrix::Zero(w.rows(), w.cols()));
  for (const auto& b : other.biases) p.biases.push_back(Vector::Zero(b.size()));
  return p;
}

bool Params::same_shape(const Params& other) const {
  if (weights.size() != other.weights.size() || biases.size() != other.biases.size()) return false;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k].rows() != other.weights[k].rows() ||
        weights[k].cols() != other.weights[k].cols() ||
        biases[k].size() != other.biases[k].size())
      return false;
  }
  return true;
}

std::size_t Params::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < weights.size(); ++k)
    n += static_cast<std::size_t>(weights[k].size() + biases[k].size());
  return n;
}

bool Params::all_finite() const {
  for (std::size_t k = 0; k < weights.size(); ++k)
    if (!weights[k].allFinite() || !biases[k].allFinite()) return false;
  return true;
}

Params& Params::operator+=(const Params& other) {
  if (!same_shape(other)) throw std::invalid_argument("Params::operator+=: shape mismatch");
  for (std::size_t k = 0; k < weights.size(); ++k) {
    weights[k] += other.weights[k];
    biases[k] += other.biases[k];
  }
  return *this;
}

Params& Params::operator*=(double s) {
  for (std::size_t k = 0; k < weights.size(); ++k) {
    weights[k] *= s;
    biases[k] *= s;
  }
  return *this;
}

bool Params::operator==(const Params& other) const {
  if (!same_shape(other)) return false;
  for (std::size_t k = 0; k < weights.size(); ++k)
    if (weights[k] != other.weights[k] || biases[k] != other.biases[k]) return false;
  return true;
}

Mlp::Mlp(std::vector<int> layer_sizes, Activation hidden, Activation output)
    : layer_sizes_(std::move(layer_sizes)), hidden_(hidden), output_(output) {
  if (layer_sizes_.size() < 2)
    throw std::invalid_argument("Mlp: need at least input and output layer sizes");
  for (int n : layer_sizes_)
    if (n <= 0) throw std::invalid_argument("Mlp: layer sizes must be positive");
  for (std::size_t k = 0; k + 1 < layer_sizes_.size(); ++k) {
    params_.weights.push_back(Matrix::Zero(layer_sizes_[k + 1], layer_sizes_[k]));
    params_.biases.push_back(Vector::Zero(layer_sizes_[k + 1]));
  }
}

Mlp Mlp::init(const std::vector<int>& layer_sizes, Activation hidden, Activation output,
              Rng& rng) {
  Mlp net(layer_sizes, hidden, output);
  for (std::size_t k = 0; k < net.params_.weights.size(); ++k) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer_sizes[k]));
    auto& w = net.params_.weights[k];
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = rng.uniform(-bound, bound);
    auto& b = net.params_.biases[k];
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = rng.uniform(-bound, bound);
  }
  return net;
}

namespace {

void apply_activation(Activation a, const Matrix& z, Matrix& out) {
  switch (a) {
    case Activation::Identity:
      out = z;
      break;
    case Activation::ReLU:
      out = z.cwiseMax(0.0);
      break;
    case Activation::Tanh:
      out = z.array().tanh().matrix();
      break;
  }
}

// dL/dz from dL/da, in place.
void activation_backward(Activation act, const Matrix& z, const Matrix& a, Matrix& grad) {
  switch (act) {
    case Activation::Identity:
      break;
    case Activation::ReLU:
      grad = (z.array() > 0.0).select(grad.array(), 0.0).matrix();
      break;
    case Activation::Tanh:
      grad.array() *= (1.0 - a.array().square());
      break;
  }
}

}  // namespace

Matrix Mlp::forward(const Matrix& input, ForwardCache* cache) const {
  if (input.cols() != input_size())
    throw std::invalid_argument("Mlp::forward: input has " + std::to_string(input.cols()) +
                                " columns, expected " + std::to_string(input_size()));
  const std::size_t n_layers = layer_count();
  if (cache) {
    cache->activations.assign(n_layers + 1, Matrix());
    cache->pre_activations.assign(n_layers, Matrix());
    cache->activations[0] = input;
    cache->generation = generation_;
    cache->layer_sizes = layer_sizes_;
  }
  Matrix a = input;
  Matrix z;
  for (std::size_t k = 0; k < n_layers; ++k) {
    z.noalias() = a * params_.weights[k].transpose();
    z.rowwise() += params_.biases[k].transpose();
    const Activation act = (k + 1 == n_layers) ? output_ : hidden_;
    apply_activation(act, z, a);
    if (cache) {
      cache->pre_activations[k] = z;
      cache->activations[k + 1] = a;
    }
  }
  return a;
}

void Mlp::check_cache(const ForwardCache& cache, const Matrix& output_gradient) const {
  if (cache.layer_sizes != layer_sizes_ || cache.pre_activations.size() != layer_count())
    throw std::invalid_argument("Mlp::backward: cache does not belong to this network");
  if (cache.generation != generation_)
    throw std::logic_error("Mlp::backward: stale cache (parameters changed since forward)");
  const Matrix& out = cache.activations.back();
  if (output_gradient.rows() != out.rows() || output_gradient.cols() != out.cols())
    throw std::invalid_argument("Mlp::backward: output gradient shape mismatch");
}

BackwardResult Mlp::backward(const ForwardCache& cache, const Matrix& output_gradient) const {
  check_cache(cache, output_gradient);
  const std::size_t n_layers = layer_count();
  BackwardResult result;
  result.gradients.weights.resize(n_layers);
  result.gradients.biases.resize(n_layers);
  Matrix grad = output_gradient;
  for (std::size_t k = n_layers; k-- > 0;) {
    const Activation act = (k + 1 == n_layers) ? output_ : hidden_;
    activation_backward(act, cache.pre_activations[k], cache.activations[k + 1], grad);
    result.gradients.weights[k].noalias() = grad.transpose() * cache.activations[k];
    result.gradients.biases[k] = grad.colwise().sum().transpose();
    Matrix prev;
    prev.noalias() = grad * params_.weights[k];
    grad = std::move(prev);
  }
  result.input_gradient = std::move(grad);
  return result;
}

Matrix Mlp::backward_input(const ForwardCache& cache, const Matrix& output_gradient) const {
  check_cache(cache, output_gradient);
  const std::size_t n_layers = layer_count();
  Matrix grad = output_gradient;
  for (std::size_t k = n_layers; k-- > 0;) {
    const Activation act = (k + 1 == n_layers) ? output_ : hidden_;
    activation_backward(act, cache.pre_activations[k], cache.activations[k + 1], grad);
    Matrix prev;
    prev.noalias() = grad * params_.weights[k];
    grad = std::move(prev);
  }
  return grad;
}

bool Mlp::same_shape(const Mlp& other) const {
  return layer_sizes_ == other.layer_sizes_ && params_.same_shape(other.params_);
}

bool Mlp::operator==(const Mlp& other) const {
  return layer_sizes_ == other.layer_sizes_ && hidden_ == other.hidden_ &&
         output_ == other.output_ && params_ == other.params_;
}

void polyak_update(Mlp& target, const Mlp& main, double rho) {
  if (!target.same_shape(main)) throw std::invalid_argument("polyak_update: shape mismatch");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("polyak_update: rho outside [0, 1]");
  Params& t = target.mutable_params();
  const Params& m = main.params();
  for (std::size_t k = 0; k < t.weights.size(); ++k) {
    t.weights[k] = rho * t.weights[k] + (1.0 - rho) * m.weights[k];
    t.biases[k] = rho * t.biases[k] + (1.0 - rho) * m.biases[k];
  }
}

}  // namespace sarc::nnet
