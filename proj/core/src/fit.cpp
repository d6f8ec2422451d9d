#include "normlab/fit.hpp"

#include <gsl/gsl_fit.h>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace normlab {

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_linear needs two or more matched points");
  double c0 = 0, c1 = 0, cov00 = 0, cov01 = 0, cov11 = 0, sumsq = 0;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double total = 0.0;
  for (double v : y) total += (v - mean) * (v - mean);
  const double r2 = total > 0.0 ? 1.0 - sumsq / total : 1.0;
  return {c1, c0, r2};
}

LinearFit fit_log_linear(std::span<const double> x, std::span<const double> y) {
  std::vector<double> logs(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw std::invalid_argument("fit_log_linear needs positive data");
    logs[i] = std::log(y[i]);
  }
  return fit_linear(x, logs);
}

}  // namespace normlab
