#include "normlab/flow_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "normlab/calculus.hpp"
#include "normlab/interpolation.hpp"
#include "normlab/norms.hpp"

namespace normlab::transport {

double FlowMap::max_displacement() const {
  double m = 0.0;
  for (std::size_t k = 0; k < forward_x.size(); ++k) {
    m = std::max({m, std::hypot(forward_x[k], forward_y[k]), std::hypot(backward_x[k], backward_y[k])});
  }
  return m;
}

void rk4_positions(const Velocity& u, double time, double dt, RealBuffer& x, RealBuffer& y) {
  const double half = 0.5 * dt;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double x0 = x[k];
    const double y0 = y[k];
    const Vec2 k1 = u.at(x0, y0, time);
    const Vec2 k2 = u.at(x0 + half * k1[0], y0 + half * k1[1], time + half);
    const Vec2 k3 = u.at(x0 + half * k2[0], y0 + half * k2[1], time + half);
    const Vec2 k4 = u.at(x0 + dt * k3[0], y0 + dt * k3[1], time + dt);
    x[k] = x0 + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    y[k] = y0 + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  }
}

double displacement_lipschitz(const Grid& grid, const RealBuffer& dx, const RealBuffer& dy) {
  const VectorField d{Field::from_values(grid, dx), Field::from_values(grid, dy)};
  return lipschitz_seminorm(d);
}

namespace {

void grid_positions(const Grid& grid, RealBuffer& x, RealBuffer& y) {
  const int n = grid.n();
  x.assign(grid.size(), 0.0);
  y.assign(grid.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      x[k] = grid.coordinate(i);
      y[k] = grid.coordinate(j);
    }
  }
}

void to_displacement(const Grid& grid, RealBuffer& x, RealBuffer& y) {
  const int n = grid.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      x[k] -= grid.coordinate(i);
      y[k] -= grid.coordinate(j);
    }
  }
}

}  // namespace

FlowMap integrate_flow(const Velocity& u, const Grid& grid, double t, double dt) {
  if (grid.dim() != 2) throw std::invalid_argument("integrate_flow needs a 2D grid");
  if (!(t >= 0.0) || !(dt > 0.0)) throw std::invalid_argument("integrate_flow needs t >= 0 and dt > 0");
  const double lip = velocity_lipschitz(u, grid, 0.0);
  if (dt * lip > 1.0) {
    std::ostringstream msg;
    msg << "integrate_flow: dt = " << dt << " violates dt * |u|_Lip <= 1 (need dt <= " << 1.0 / lip << ")";
    throw std::invalid_argument(msg.str());
  }
  FlowMap phi;
  phi.grid = grid;
  phi.t = t;
  const int steps = t == 0.0 ? 0 : static_cast<int>(std::ceil(t / dt - 1e-12));
  const double h = steps > 0 ? t / steps : 0.0;

  grid_positions(grid, phi.forward_x, phi.forward_y);
  for (int s = 0; s < steps; ++s) rk4_positions(u, s * h, h, phi.forward_x, phi.forward_y);
  to_displacement(grid, phi.forward_x, phi.forward_y);

  const Velocity reversed{[&u, t](double x, double y, double tau) {
                            const Vec2 v = u.at(x, y, t - tau);
                            return Vec2{-v[0], -v[1]};
                          },
                          u.gradient, u.stationary, u.name + "-reversed"};
  grid_positions(grid, phi.backward_x, phi.backward_y);
  for (int s = 0; s < steps; ++s) rk4_positions(reversed, s * h, h, phi.backward_x, phi.backward_y);
  to_displacement(grid, phi.backward_x, phi.backward_y);

  phi.lip_forward = displacement_lipschitz(grid, phi.forward_x, phi.forward_y);
  phi.lip_backward = displacement_lipschitz(grid, phi.backward_x, phi.backward_y);
  return phi;
}

double jacobian_deviation(const FlowMap& phi) {
  const VectorField d{Field::from_values(phi.grid, phi.forward_x), Field::from_values(phi.grid, phi.forward_y)};
  const Jacobian dd = jacobian(d);
  const auto& a = dd[0][0].values();
  const auto& b = dd[0][1].values();
  const auto& c = dd[1][0].values();
  const auto& e = dd[1][1].values();
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    m = std::max(m, std::abs((1.0 + a[k]) * (1.0 + e[k]) - b[k] * c[k] - 1.0));
  }
  return m;
}

double composition_defect(const FlowMap& phi, int order) {
  // Phi(Phi^{-1}(x)) - x = b(x) + f(x + b(x)) with f, b the displacements.
  const InterpolationPlan plan = InterpolationPlan::displaced(phi.grid, phi.backward_x, phi.backward_y, order);
  RealBuffer fx(phi.grid.size());
  RealBuffer fy(phi.grid.size());
  plan.apply(phi.forward_x, fx.data());
  plan.apply(phi.forward_y, fy.data());
  double m = 0.0;
  for (std::size_t k = 0; k < fx.size(); ++k) {
    m = std::max(m, std::hypot(phi.backward_x[k] + fx[k], phi.backward_y[k] + fy[k]));
  }
  return m;
}

double gronwall_bound(double t, double lipschitz) { return t * lipschitz * std::exp(t * lipschitz); }

}  // namespace normlab::transport
