#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "normlab/calculus.hpp"
#include "normlab/field.hpp"

namespace normlab::transport {

using Vec2 = std::array<double, 2>;
/// Row-major (du1/dx, du1/dy, du2/dx, du2/dy).
using Mat2 = std::array<double, 4>;

/// Prescribed velocity field u(x, y, t), evaluated pointwise.
struct Velocity {
  std::function<Vec2(double, double, double)> at;
  std::function<Mat2(double, double, double)> gradient;
  bool stationary = true;
  std::string name;
};

Velocity zero_velocity();
Velocity constant_velocity(double a, double b);
/// amplitude * (sin x cos y, -cos x sin y).
Velocity cellular_velocity(double amplitude = 1.0);
/// Divergence-free field from a random trigonometric stream function with
/// integer wave vectors up to max_mode (in units of 2 pi / period). Scaled so
/// that the Lipschitz seminorm sampled on a 128^2 grid equals lipschitz.
Velocity random_smooth_velocity(std::uint64_t seed, double period, int max_mode, double lipschitz);

VectorField sample_velocity(const Velocity& u, const Grid& grid, double t);
/// Max over grid points of the operator norm of the velocity gradient.
double velocity_lipschitz(const Velocity& u, const Grid& grid, double t = 0.0);
double velocity_max_speed(const Velocity& u, const Grid& grid, double t = 0.0);

}  // namespace normlab::transport
