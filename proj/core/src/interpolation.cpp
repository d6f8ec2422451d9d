#include "normlab/interpolation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace normlab {

LagrangeStencil::LagrangeStencil(int order) : order_(order), denominators_(static_cast<std::size_t>(order)) {
  if (order < 2 || order % 2 != 0 || order > 16) {
    throw std::invalid_argument("interpolation order must be even in [2, 16], got " + std::to_string(order));
  }
  for (int m = 0; m < order; ++m) {
    double d = 1.0;
    for (int l = 0; l < order; ++l) {
      if (l != m) d *= static_cast<double>(m - l);
    }
    denominators_[static_cast<std::size_t>(m)] = 1.0 / d;
  }
}

int LagrangeStencil::weights(double s, double* out) const {
  const double cell = std::floor(s);
  const double t = s - cell;
  const int half = order_ / 2;
  // Nodes sit at offsets l - half + 1 relative to the cell, l = 0..order-1.
  double prefix[17];
  double suffix[17];
  prefix[0] = 1.0;
  for (int l = 0; l < order_; ++l) prefix[l + 1] = prefix[l] * (t - (l - half + 1));
  suffix[order_] = 1.0;
  for (int l = order_ - 1; l >= 0; --l) suffix[l] = suffix[l + 1] * (t - (l - half + 1));
  for (int m = 0; m < order_; ++m) out[m] = denominators_[static_cast<std::size_t>(m)] * prefix[m] * suffix[m + 1];
  return static_cast<int>(cell) - half + 1;
}

namespace {
inline int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}
}  // namespace

InterpolationPlan::InterpolationPlan(const Grid& grid, const RealBuffer& x, const RealBuffer& y, int order)
    : grid_(grid), order_(order) {
  const LagrangeStencil stencil(order);
  const std::size_t count = x.size();
  if (grid.dim() == 2 && y.size() != count) throw std::invalid_argument("interpolation targets: x and y sizes differ");
  const double h = grid.spacing();
  base_x_.resize(count);
  wx_.resize(count * order);
  if (grid.dim() == 2) {
    base_y_.resize(count);
    wy_.resize(count * order);
  }
  for (std::size_t k = 0; k < count; ++k) {
    base_x_[k] = stencil.weights(x[k] / h, &wx_[k * order]);
    if (grid.dim() == 2) base_y_[k] = stencil.weights(y[k] / h, &wy_[k * order]);
  }
}

InterpolationPlan InterpolationPlan::displaced(const Grid& grid, const RealBuffer& dx, const RealBuffer& dy,
                                               int order) {
  const int n = grid.n();
  RealBuffer x(grid.size());
  RealBuffer y(grid.dim() == 2 ? grid.size() : 0);
  const double h = grid.spacing();
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) x[i] = i * h + dx[i];
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::size_t k = static_cast<std::size_t>(i) * n + j;
        x[k] = i * h + dx[k];
        y[k] = j * h + dy[k];
      }
    }
  }
  return InterpolationPlan(grid, x, y, order);
}

void InterpolationPlan::apply(const RealBuffer& values, double* out) const {
  const int n = grid_.n();
  const int p = order_;
  const std::size_t count = base_x_.size();
  if (grid_.dim() == 1) {
    for (std::size_t k = 0; k < count; ++k) {
      const double* w = &wx_[k * p];
      double acc = 0.0;
      for (int a = 0; a < p; ++a) acc += w[a] * values[static_cast<std::size_t>(wrap(base_x_[k] + a, n))];
      out[k] = acc;
    }
    return;
  }
  int cols[16];
  for (std::size_t k = 0; k < count; ++k) {
    const double* wxk = &wx_[k * p];
    const double* wyk = &wy_[k * p];
    for (int b = 0; b < p; ++b) cols[b] = wrap(base_y_[k] + b, n);
    double acc = 0.0;
    for (int a = 0; a < p; ++a) {
      const double* row = &values[static_cast<std::size_t>(wrap(base_x_[k] + a, n)) * n];
      double inner = 0.0;
      for (int b = 0; b < p; ++b) inner += wyk[b] * row[cols[b]];
      acc += wxk[a] * inner;
    }
    out[k] = acc;
  }
}

Field InterpolationPlan::apply(const Field& f) const {
  if (!(f.grid() == grid_)) throw std::invalid_argument("interpolation plan built for another grid");
  if (targets() != grid_.size()) throw std::logic_error("plan targets are not a grid-shaped set");
  const Field p = f.has_values() ? f : to_physical(f);
  RealBuffer out(grid_.size());
  apply(p.values(), out.data());
  return Field::from_values(grid_, std::move(out));
}

Field compose_displaced(const Field& f, const RealBuffer& dx, const RealBuffer& dy, int order) {
  return InterpolationPlan::displaced(f.grid(), dx, dy, order).apply(f);
}

double interpolate_at(const Field& f, double x, double y, int order) {
  RealBuffer xs{x};
  RealBuffer ys{y};
  if (f.grid().dim() == 1) ys.clear();
  const InterpolationPlan plan(f.grid(), xs, ys, order);
  const Field p = f.has_values() ? f : to_physical(f);
  double out = 0.0;
  plan.apply(p.values(), &out);
  return out;
}

}  // namespace normlab
