#pragma once

#include <array>

#include "normlab/field.hpp"

namespace normlab {

/// Spectral partial derivative along axis 1 or 2.
Field partial(const Field& f, int axis);
VectorField gradient(const Field& f);

/// Velocity u = grad_perp (-Delta)^{-1} omega with grad_perp = (d_y, -d_x), so
/// that curl u = d_x u_2 - d_y u_1 = omega. Throws std::domain_error when the
/// mean of omega exceeds 1e-10.
VectorField perp_grad_inv_laplacian(const Field& vorticity);
/// (d_y psi, -d_x psi).
VectorField perp_gradient(const Field& stream);

Field curl(const VectorField& u);
Field divergence(const VectorField& u);

/// Entries (du_a / dx_b) for a, b in {0, 1}, returned as [a][b].
using Jacobian = std::array<std::array<Field, 2>, 2>;
Jacobian jacobian(const VectorField& u);

/// Pointwise det of the velocity gradient.
Field jacobian_determinant(const Jacobian& du);

/// Largest singular value of a 2x2 matrix.
double operator_norm(double a11, double a12, double a21, double a22);

}  // namespace normlab
