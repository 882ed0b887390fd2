#include "sarc/policy/action_map.hpp"

#include <cmath>
#include <stdexcept>

namespace sarc::policy {

ActionMap ActionMap::from_bounds(const Vector& low, const Vector& high) {
  if (low.size() != high.size() || low.size() == 0)
    throw std::invalid_argument("ActionMap: bound vectors must be non-empty and equal length");
  if (!(low.array() < high.array()).all())
    throw std::invalid_argument("ActionMap: action_low must be < action_high");
  return {(high - low) / 2.0, (high + low) / 2.0};
}

Matrix ActionMap::apply(const Matrix& squashed) const {
  Matrix out = squashed * scale.asDiagonal();
  out.rowwise() += offset.transpose();
  return out;
}

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace sarc::policy
