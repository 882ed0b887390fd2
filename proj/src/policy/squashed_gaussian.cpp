#include "sarc/policy/squashed_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sarc::policy {

namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// log(1 - tanh(u)^2) = 2 (log 2 - u - softplus(-2u)), stable for large |u|.
double log_one_minus_tanh_sq(double u) {
  return 2.0 * (std::numbers::ln2 - u - softplus(-2.0 * u));
}

}  // namespace

SquashedGaussianActor::SquashedGaussianActor(int obs_dim, const std::vector<int>& hidden_sizes,
                                             ActionMap map, Rng& init_rng)
    : map_(std::move(map)) {
  std::vector<int> sizes{obs_dim};
  sizes.insert(sizes.end(), hidden_sizes.begin(), hidden_sizes.end());
  sizes.push_back(2 * map_.dim());
  net_ = nnet::Mlp::init(sizes, nnet::Activation::ReLU, nnet::Activation::Identity, init_rng);
}

SquashedGaussianActor::SquashedGaussianActor(nnet::Mlp net, ActionMap map)
    : net_(std::move(net)), map_(std::move(map)) {
  if (net_.output_size() != 2 * map_.dim() ||
      net_.output_activation() != nnet::Activation::Identity)
    throw std::invalid_argument("SquashedGaussianActor: network must emit 2*act_dim linear outputs");
}

void SquashedGaussianActor::split_heads(const Matrix& out, Matrix& mean,
                                        Matrix& raw_log_std) const {
  const int a = act_dim();
  mean = out.leftCols(a);
  raw_log_std = out.rightCols(a);
}

GaussianSample SquashedGaussianActor::sample(const Matrix& states, Rng& rng) const {
  Matrix noise(states.rows(), act_dim());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise.data()[i] = rng.normal();
  return sample_with_noise(states, noise);
}

GaussianSample SquashedGaussianActor::sample_with_noise(const Matrix& states,
                                                        const Matrix& noise) const {
  if (noise.rows() != states.rows() || noise.cols() != act_dim())
    throw std::invalid_argument("SquashedGaussianActor: noise shape mismatch");
  GaussianSample s;
  const Matrix out = net_.forward(states, &s.cache);
  split_heads(out, s.mean, s.raw_log_std);
  const Matrix log_std = s.raw_log_std.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
  s.std = log_std.array().exp().matrix();
  s.noise = noise;
  s.pre_tanh = s.mean + s.std.cwiseProduct(noise);
  s.squashed = s.pre_tanh.array().tanh().matrix();
  s.action = map_.apply(s.squashed);

  const Eigen::Index rows = states.rows();
  s.log_prob.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double lp = 0.0;
    for (int j = 0; j < act_dim(); ++j) {
      const double eps = noise(i, j);
      lp += -0.5 * eps * eps - log_std(i, j) - kHalfLog2Pi - std::log(map_.scale[j]) -
            log_one_minus_tanh_sq(s.pre_tanh(i, j));
    }
    s.log_prob[i] = lp;
  }
  return s;
}

Vector SquashedGaussianActor::log_prob(const Matrix& states, const Matrix& pre_tanh) const {
  if (pre_tanh.rows() != states.rows() || pre_tanh.cols() != act_dim())
    throw std::invalid_argument("SquashedGaussianActor::log_prob: shape mismatch");
  Matrix mean, raw;
  split_heads(net_.forward(states), mean, raw);
  Vector out(states.rows());
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    double lp = 0.0;
    for (int j = 0; j < act_dim(); ++j) {
      const double log_std = std::clamp(raw(i, j), kLogStdMin, kLogStdMax);
      const double z = (pre_tanh(i, j) - mean(i, j)) / std::exp(log_std);
      lp += -0.5 * z * z - log_std - kHalfLog2Pi - std::log(map_.scale[j]) -
            log_one_minus_tanh_sq(pre_tanh(i, j));
    }
    out[i] = lp;
  }
  return out;
}

double SquashedGaussianActor::log_prob(const Vector& state, const Vector& pre_tanh) const {
  return log_prob(Matrix(state.transpose()), Matrix(pre_tanh.transpose()))[0];
}

Matrix SquashedGaussianActor::deterministic_action(const Matrix& states) const {
  const Matrix out = net_.forward(states);
  return map_.apply(out.leftCols(act_dim()).array().tanh().matrix());
}

Vector SquashedGaussianActor::deterministic_action(const Vector& state) const {
  return deterministic_action(Matrix(state.transpose())).row(0).transpose();
}

nnet::Params SquashedGaussianActor::backward(const GaussianSample& s, const Matrix& action_grad,
                                             const Vector& log_prob_grad) const {
  const Eigen::Index rows = s.action.rows();
  const int a = act_dim();
  if (action_grad.rows() != rows || action_grad.cols() != a || log_prob_grad.size() != rows)
    throw std::invalid_argument("SquashedGaussianActor::backward: gradient shape mismatch");

  Matrix out_grad(rows, 2 * a);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (int j = 0; j < a; ++j) {
      const double t = s.squashed(i, j);
      // d log_prob / du = 2 tanh(u); d action / du = scale (1 - tanh^2 u)
      const double du = log_prob_grad[i] * 2.0 * t + action_grad(i, j) * map_.scale[j] * (1.0 - t * t);
      const double dlog_std = -log_prob_grad[i] + du * s.std(i, j) * s.noise(i, j);
      const double raw = s.raw_log_std(i, j);
      out_grad(i, j) = du;
      out_grad(i, a + j) = (raw >= kLogStdMin && raw <= kLogStdMax) ? dlog_std : 0.0;
    }
  }
  return net_.backward(s.cache, out_grad).gradients;
}

}  // namespace sarc::policy
