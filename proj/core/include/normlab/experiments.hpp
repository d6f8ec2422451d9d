#pragma once

#include <functional>
#include <string>
#include <vector>

#include "normlab/config.hpp"
#include "normlab/records.hpp"

namespace normlab::experiments {

/// Every experiment reads its own config section (falling back to
/// "global"), records the effective parameters in the report manifest and
/// hashes them into the config hash.
using Runner = std::function<Report(const Config&)>;

struct Entry {
  std::string name;
  std::string summary;
  Runner run;
};

/// Registered experiments in a fixed order.
const std::vector<Entry>& registry();
const Entry& find(const std::string& name);

Report assumption1_scan(const Config& config);
Report linear_inflation(const Config& config);
Report euler_inflation(const Config& config);
Report exp_growth(const Config& config);
Report c1_inflation(const Config& config);
Report commutator_scan(const Config& config);
Report calibrate(const Config& config);

Report hilbert_toy(const Config& config);
Report littlewood_paley_suite(const Config& config);
Report flow_map_suite(const Config& config);
Report duhamel_study(const Config& config);
Report euler_conservation(const Config& config);
Report yudovich_probe(const Config& config);

/// Finite-difference d_xxyy G along a ray at r = 2^-k, k = 1..8, and the
/// slope of the values against log(x^2 + y^2).
struct FdSlope {
  std::vector<double> radius;
  std::vector<double> value;
  double slope = 0.0;
  double r_squared = 0.0;
};
FdSlope fd_dxxyy_slope(double theta, int k_min, int k_max);

/// max |Delta Q| over `count` pseudo-random points in [-2, 2]^2.
double laplacian_Q_defect(int count, unsigned long seed);

}  // namespace normlab::experiments
