#pragma once

#include <Eigen/Dense>

namespace sarc::nnet {

// Row-major dense storage: one row per sample in a batch.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& m) {
  return m.allFinite();
}

}  // namespace sarc::nnet
