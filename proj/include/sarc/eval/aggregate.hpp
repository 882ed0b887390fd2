#pragma once

#include <cstddef>
#include <vector>

namespace sarc::eval {

struct Curve {
  std::vector<std::size_t> env_steps;
  std::vector<double> values;
};

struct CurveAggregate {
  std::vector<std::size_t> env_steps;
  std::vector<std::vector<double>> per_seed;
  std::vector<double> mean;
  std::vector<double> std;  // population
};

// Pointwise mean and population std across seeds. Values at each step are
// reduced in sorted order, so the result does not depend on seed order.
// Throws std::invalid_argument on an empty list or misaligned grids.
CurveAggregate aggregate_seeds(const std::vector<Curve>& curves);

// Population mean/std with a two-pass reduction.
void mean_and_std(const std::vector<double>& xs, double& mean, double& std);

}  // namespace sarc::eval
