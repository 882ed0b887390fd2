#include "sarc/nnet/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sarc::nnet {

double relative_error(double analytic, double numeric, double scale_floor) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), scale_floor});
  return std::abs(analytic - numeric) / denom;
}

GradCheckResult grad_check(const Mlp& mlp, const std::function<LossAndGrad(const Mlp&)>& loss_fn,
                           const GradCheckOptions& options) {
  const LossAndGrad base = loss_fn(mlp);
  return grad_check(
      mlp, base.gradients, [&](const Mlp& m) { return loss_fn(m).loss; }, options);
}

GradCheckResult grad_check(const Mlp& mlp, const Params& analytic,
                           const std::function<double(const Mlp&)>& loss_only,
                           const GradCheckOptions& options) {
  if (!mlp.params().same_shape(analytic))
    throw std::invalid_argument("grad_check: analytic gradient shape mismatch");
  GradCheckResult result;
  Mlp probe = mlp;
  const double h = options.step;

  auto check_entry = [&](double& slot, double analytic_value) {
    const double saved = slot;
    slot = saved + h;
    const double up = loss_only(probe);
    slot = saved - h;
    const double down = loss_only(probe);
    slot = saved;
    const double numeric = (up - down) / (2.0 * h);
    result.max_relative_error = std::max(
        result.max_relative_error, relative_error(analytic_value, numeric, options.scale_floor));
    result.max_absolute_error =
        std::max(result.max_absolute_error, std::abs(analytic_value - numeric));
    ++result.parameters_checked;
  };

  for (std::size_t k = 0; k < analytic.weights.size(); ++k) {
    const Eigen::Index nw = analytic.weights[k].size();
    for (Eigen::Index i = 0; i < nw; ++i)
      check_entry(probe.mutable_params().weights[k].data()[i], analytic.weights[k].data()[i]);
    const Eigen::Index nb = analytic.biases[k].size();
    for (Eigen::Index i = 0; i < nb; ++i)
      check_entry(probe.mutable_params().biases[k][i], analytic.biases[k][i]);
  }
  return result;
}

}  // namespace sarc::nnet
