#include "sarc/eval/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sarc::eval {

void mean_and_std(const std::vector<double>& xs, double& mean, double& std) {
  if (xs.empty()) throw std::invalid_argument("mean_and_std: empty input");
  double sum = 0.0;
  for (double x : xs) sum += x;
  mean = sum / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  std = std::sqrt(sq / static_cast<double>(xs.size()));
}

CurveAggregate aggregate_seeds(const std::vector<Curve>& curves) {
  if (curves.empty()) throw std::invalid_argument("aggregate_seeds: no curves");
  CurveAggregate agg;
  agg.env_steps = curves.front().env_steps;
  for (const Curve& c : curves) {
    if (c.env_steps != agg.env_steps || c.values.size() != c.env_steps.size())
      throw std::invalid_argument("aggregate_seeds: curves are not on the same env_step grid");
    agg.per_seed.push_back(c.values);
  }
  const std::size_t n = agg.env_steps.size();
  agg.mean.resize(n);
  agg.std.resize(n);
  std::vector<double> column(curves.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < curves.size(); ++k) column[k] = curves[k].values[i];
    std::sort(column.begin(), column.end());
    mean_and_std(column, agg.mean[i], agg.std[i]);
  }
  return agg;
}

}  // namespace sarc::eval
