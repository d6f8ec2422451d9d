#pragma once

#include <complex>
#include <functional>
#include <string>

#include "normlab/field.hpp"

namespace normlab {

/// What a multiplier does to the zero Fourier mode. `error` evaluates the
/// symbol there and rejects a non-finite value.
enum class ZeroModePolicy { zero, identity, error };

/// Fourier-symbol operator acting on lattice coefficients.
///
/// The symbol receives the physical frequency (xi1, xi2); for 1D grids xi2 is
/// zero. Coefficients on a Nyquist line are set to zero by every multiplier,
/// since the sign of the frequency there is ambiguous.
struct Multiplier {
  std::function<std::complex<double>(double, double)> symbol;
  ZeroModePolicy zero_mode = ZeroModePolicy::zero;
  std::string name;
};

/// Symbol evaluated on every stored coefficient of the grid, with the zero
/// mode policy and the Nyquist rule already applied.
ComplexBuffer sample_symbol(const Multiplier& m, const Grid& g);

Field apply_multiplier(const Multiplier& m, const Field& f);
Field apply_sampled(const ComplexBuffer& symbol, const Field& f);

Multiplier identity_multiplier();
/// Hilbert transform, symbol -i sgn(xi1).
Multiplier hilbert();
/// Riesz transform R_i, symbol -i xi_i / |xi|.
Multiplier riesz(int axis);
/// R_i R_j, symbol -xi_i xi_j / |xi|^2.
Multiplier riesz_pair(int i, int j);
/// (-Delta)^{-1}, symbol 1 / |xi|^2.
Multiplier inverse_laplacian();
/// Partial derivative along axis (1 or 2), symbol i xi_axis.
Multiplier derivative(int axis);
/// Symbol xi -> exp(t * symbol(xi)). Throws std::overflow_error when the
/// exponential is not finite at a lattice point.
Multiplier exp_of_multiplier(const Multiplier& m, double t);
Multiplier compose(const Multiplier& outer, const Multiplier& inner);
Multiplier scale(const Multiplier& m, double factor);

}  // namespace normlab
