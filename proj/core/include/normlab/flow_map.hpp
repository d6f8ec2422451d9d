#pragma once

#include "normlab/field.hpp"
#include "normlab/velocity.hpp"

namespace normlab::transport {

/// Particle map Phi(., t) and its inverse, stored as periodic displacements
/// Phi - Id and Phi^{-1} - Id sampled on the grid.
struct FlowMap {
  Grid grid;
  double t = 0.0;
  RealBuffer forward_x, forward_y;
  RealBuffer backward_x, backward_y;
  double lip_forward = 0.0;
  double lip_backward = 0.0;

  /// max(|Phi - Id|_Lip, |Phi^{-1} - Id|_Lip).
  double M() const noexcept { return lip_forward > lip_backward ? lip_forward : lip_backward; }
  double max_displacement() const;
};

/// RK4 along characteristics from every grid point. The backward map is
/// integrated with the reversed velocity. The step is shortened to divide t
/// evenly; throws std::invalid_argument when dt * |u|_Lip exceeds 1.
FlowMap integrate_flow(const Velocity& u, const Grid& grid, double t, double dt);

/// One RK4 step of x' = u(x, time) for every point, in place.
void rk4_positions(const Velocity& u, double time, double dt, RealBuffer& x, RealBuffer& y);

/// Max of the operator norm of the spectral Jacobian of a displacement.
double displacement_lipschitz(const Grid& grid, const RealBuffer& dx, const RealBuffer& dy);
/// |det D Phi - 1|_inf for the forward map.
double jacobian_deviation(const FlowMap& phi);
/// |Phi(Phi^{-1}(x)) - x|_inf, using interpolation of the given order.
double composition_defect(const FlowMap& phi, int order);

/// Right side of the Gronwall estimate t |u|_Lip exp(t |u|_Lip).
double gronwall_bound(double t, double lipschitz);

}  // namespace normlab::transport
