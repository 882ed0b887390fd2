#pragma once

#include <functional>

#include "sarc/nnet/mlp.hpp"

namespace sarc::nnet {

struct LossAndGrad {
  double loss = 0.0;
  Params gradients;
};

struct GradCheckOptions {
  double step = 1e-5;
  // Denominator floor for the relative error; keeps entries whose true
  // gradient is ~0 from dividing finite-difference noise by ~0.
  double scale_floor = 1e-6;
};

struct GradCheckResult {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  std::size_t parameters_checked = 0;
};

// Compares loss_fn's analytic gradient at `mlp` against central differences of
// its loss over every weight and bias. The network passed to loss_fn is a
// perturbed copy; loss_fn must be deterministic.
GradCheckResult grad_check(const Mlp& mlp, const std::function<LossAndGrad(const Mlp&)>& loss_fn,
                           const GradCheckOptions& options = {});

// Same comparison for a loss with a separately supplied analytic gradient and
// a loss-only evaluator.
GradCheckResult grad_check(const Mlp& mlp, const Params& analytic,
                           const std::function<double(const Mlp&)>& loss_only,
                           const GradCheckOptions& options = {});

double relative_error(double analytic, double numeric, double scale_floor);

}  // namespace sarc::nnet
