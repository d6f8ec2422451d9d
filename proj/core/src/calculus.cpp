#include "normlab/calculus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "normlab/multiplier.hpp"

namespace normlab {

Field partial(const Field& f, int axis) {
  if (axis == 2 && f.grid().dim() == 1) throw std::invalid_argument("partial: 1D field has no second axis");
  return apply_multiplier(derivative(axis), f);
}

VectorField gradient(const Field& f) { return {partial(f, 1), partial(f, 2)}; }

VectorField perp_gradient(const Field& stream) {
  return {partial(stream, 2), scaled(partial(stream, 1), -1.0)};
}

VectorField perp_grad_inv_laplacian(const Field& vorticity) {
  const Field w = vorticity.has_coefficients() ? vorticity : to_spectral(vorticity);
  const double mean = w.coefficients()[0].real();
  if (std::abs(mean) > 1e-10) {
    std::ostringstream msg;
    msg << "Biot-Savart law needs mean-zero vorticity, mean = " << mean;
    throw std::domain_error(msg.str());
  }
  return perp_gradient(apply_multiplier(inverse_laplacian(), w));
}

Field curl(const VectorField& u) { return combine(1.0, partial(u[1], 1), -1.0, partial(u[0], 2)); }

Field divergence(const VectorField& u) { return combine(1.0, partial(u[0], 1), 1.0, partial(u[1], 2)); }

Jacobian jacobian(const VectorField& u) {
  return {{{to_physical(partial(u[0], 1)), to_physical(partial(u[0], 2))},
           {to_physical(partial(u[1], 1)), to_physical(partial(u[1], 2))}}};
}

Field jacobian_determinant(const Jacobian& du) {
  const auto& a = du[0][0].values();
  const auto& b = du[0][1].values();
  const auto& c = du[1][0].values();
  const auto& d = du[1][1].values();
  RealBuffer out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * d[k] - b[k] * c[k];
  return Field::from_values(du[0][0].grid(), std::move(out));
}

double operator_norm(double a11, double a12, double a21, double a22) {
  // sigma_max^2 is the larger eigenvalue of A^T A.
  const double p = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
  const double det = a11 * a22 - a12 * a21;
  const double disc = std::max(0.0, p * p / 4.0 - det * det);
  return std::sqrt(p / 2.0 + std::sqrt(disc));
}

}  // namespace normlab
