#pragma once

#include "sarc/nnet/matrix.hpp"

namespace sarc::policy {

using nnet::Matrix;
using nnet::Vector;

// Affine map from the tanh range (-1, 1) onto [low, high] per dimension.
struct ActionMap {
  Vector scale;
  Vector offset;

  static ActionMap from_bounds(const Vector& low, const Vector& high);
  int dim() const { return static_cast<int>(scale.size()); }
  Vector low() const { return offset - scale; }
  Vector high() const { return offset + scale; }
  // Row-wise scale * x + offset.
  Matrix apply(const Matrix& squashed) const;
};

double softplus(double x);

}  // namespace sarc::policy
