#pragma once

#include <vector>

#include "normlab/field.hpp"

namespace normlab {

/// Tensor-product periodic Lagrange interpolation with an even number of
/// nodes per axis (the order) centered on the target cell.
class LagrangeStencil {
 public:
  explicit LagrangeStencil(int order);
  int order() const noexcept { return order_; }
  /// For position s in index units: first node index and the order weights.
  int weights(double s, double* out) const;

 private:
  int order_;
  std::vector<double> denominators_;
};

/// Samples of f at the grid points displaced by (dx, dy): f(x + d(x)).
/// For 1D fields dy is ignored and may be empty.
Field compose_displaced(const Field& f, const RealBuffer& dx, const RealBuffer& dy, int order);

/// Precomputed stencils for a fixed set of target points, reused for many
/// fields on the same grid.
class InterpolationPlan {
 public:
  InterpolationPlan(const Grid& grid, const RealBuffer& x, const RealBuffer& y, int order);
  /// Targets are the grid points displaced by (dx, dy).
  static InterpolationPlan displaced(const Grid& grid, const RealBuffer& dx, const RealBuffer& dy, int order);

  std::size_t targets() const noexcept { return base_x_.size(); }
  void apply(const RealBuffer& values, double* out) const;
  Field apply(const Field& f) const;

 private:
  Grid grid_;
  int order_;
  std::vector<int> base_x_;
  std::vector<int> base_y_;
  std::vector<double> wx_;
  std::vector<double> wy_;
};

/// Value of f at an arbitrary point.
double interpolate_at(const Field& f, double x, double y, int order);

}  // namespace normlab
