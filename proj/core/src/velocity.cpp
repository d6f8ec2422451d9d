#include "normlab/velocity.hpp"

#include <gsl/gsl_randist.h>
#include <gsl/gsl_rng.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

namespace normlab::transport {

Velocity zero_velocity() {
  return {[](double, double, double) { return Vec2{0.0, 0.0}; },
          [](double, double, double) { return Mat2{0.0, 0.0, 0.0, 0.0}; }, true, "zero"};
}

Velocity constant_velocity(double a, double b) {
  return {[a, b](double, double, double) { return Vec2{a, b}; },
          [](double, double, double) { return Mat2{0.0, 0.0, 0.0, 0.0}; }, true, "constant"};
}

Velocity cellular_velocity(double amplitude) {
  return {[amplitude](double x, double y, double) {
            return Vec2{amplitude * std::sin(x) * std::cos(y), -amplitude * std::cos(x) * std::sin(y)};
          },
          [amplitude](double x, double y, double) {
            const double cc = amplitude * std::cos(x) * std::cos(y);
            const double ss = amplitude * std::sin(x) * std::sin(y);
            return Mat2{cc, -ss, ss, -cc};
          },
          true, "cellular"};
}

namespace {

struct StreamMode {
  double k1, k2, amp, phase;
};

}  // namespace

Velocity random_smooth_velocity(std::uint64_t seed, double period, int max_mode, double lipschitz) {
  std::unique_ptr<gsl_rng, decltype(&gsl_rng_free)> rng(gsl_rng_alloc(gsl_rng_mt19937), &gsl_rng_free);
  gsl_rng_set(rng.get(), static_cast<unsigned long>(seed));
  auto modes = std::make_shared<std::vector<StreamMode>>();
  const double base = 2.0 * std::numbers::pi / period;
  for (int a = -max_mode; a <= max_mode; ++a) {
    for (int b = 0; b <= max_mode; ++b) {
      if (b == 0 && a <= 0) continue;
      const double k2 = static_cast<double>(a * a + b * b);
      const double amp = gsl_ran_gaussian(rng.get(), 1.0) / (k2 * k2);
      const double phase = 2.0 * std::numbers::pi * gsl_rng_uniform(rng.get());
      modes->push_back({a * base, b * base, amp, phase});
    }
  }
  // psi = sum amp sin(k.x + phase); u = (psi_y, -psi_x).
  auto eval = [modes](double x, double y) {
    Vec2 u{0.0, 0.0};
    for (const auto& m : *modes) {
      const double c = m.amp * std::cos(m.k1 * x + m.k2 * y + m.phase);
      u[0] += c * m.k2;
      u[1] -= c * m.k1;
    }
    return u;
  };
  auto grad = [modes](double x, double y) {
    Mat2 g{0.0, 0.0, 0.0, 0.0};
    for (const auto& m : *modes) {
      const double s = -m.amp * std::sin(m.k1 * x + m.k2 * y + m.phase);
      g[0] += s * m.k2 * m.k1;
      g[1] += s * m.k2 * m.k2;
      g[2] -= s * m.k1 * m.k1;
      g[3] -= s * m.k1 * m.k2;
    }
    return g;
  };
  Velocity raw{[eval](double x, double y, double) { return eval(x, y); },
               [grad](double x, double y, double) { return grad(x, y); }, true, "random"};
  const double measured = velocity_lipschitz(raw, grid2d(128, period));
  const double factor = measured > 0.0 ? lipschitz / measured : 0.0;
  return {[eval, factor](double x, double y, double) {
            Vec2 u = eval(x, y);
            return Vec2{factor * u[0], factor * u[1]};
          },
          [grad, factor](double x, double y, double) {
            Mat2 g = grad(x, y);
            for (double& v : g) v *= factor;
            return g;
          },
          true, "random-" + std::to_string(seed)};
}

VectorField sample_velocity(const Velocity& u, const Grid& grid, double t) {
  const int n = grid.n();
  RealBuffer a(grid.size());
  RealBuffer b(grid.size());
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) a[i] = u.at(grid.coordinate(i), 0.0, t)[0];
  } else {
    for (int i = 0; i < n; ++i) {
      const double x = grid.coordinate(i);
      for (int j = 0; j < n; ++j) {
        const Vec2 v = u.at(x, grid.coordinate(j), t);
        const std::size_t k = static_cast<std::size_t>(i) * n + j;
        a[k] = v[0];
        b[k] = v[1];
      }
    }
  }
  return {Field::from_values(grid, std::move(a)), Field::from_values(grid, std::move(b))};
}

double velocity_lipschitz(const Velocity& u, const Grid& grid, double t) {
  const int n = grid.n();
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = grid.coordinate(i);
    for (int j = 0; j < (grid.dim() == 2 ? n : 1); ++j) {
      const Mat2 g = u.gradient(x, grid.dim() == 2 ? grid.coordinate(j) : 0.0, t);
      m = std::max(m, grid.dim() == 2 ? operator_norm(g[0], g[1], g[2], g[3]) : std::abs(g[0]));
    }
  }
  return m;
}

double velocity_max_speed(const Velocity& u, const Grid& grid, double t) {
  const int n = grid.n();
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = grid.coordinate(i);
    for (int j = 0; j < (grid.dim() == 2 ? n : 1); ++j) {
      const Vec2 v = u.at(x, grid.dim() == 2 ? grid.coordinate(j) : 0.0, t);
      m = std::max(m, std::hypot(v[0], v[1]));
    }
  }
  return m;
}

}  // namespace normlab::transport
