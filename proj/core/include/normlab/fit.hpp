#pragma once

#include <span>

namespace normlab {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);
/// Fit of log(y) against x; slope is the exponential rate.
LinearFit fit_log_linear(std::span<const double> x, std::span<const double> y);

}  // namespace normlab
