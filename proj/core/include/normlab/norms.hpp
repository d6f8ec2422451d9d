#pragma once

#include "normlab/calculus.hpp"
#include "normlab/field.hpp"

namespace normlab {

double linf_norm(const Field& f);
/// Area-weighted (sum |f|^p dA)^{1/p} over grid points; p = infinity gives
/// the max norm.
double lp_norm(const Field& f, double p);
/// L^2 norm from the coefficients (Parseval).
double l2_norm_spectral(const Field& f);

/// Max over grid points of |grad f| (Euclidean), from spectral derivatives.
double lipschitz_seminorm(const Field& f);
/// Max over grid points of the operator 2-norm of the spectral Jacobian.
double lipschitz_seminorm(const VectorField& u);
double max_operator_norm(const Jacobian& du);

/// Pointwise Frobenius norm of a Jacobian-like 2x2 field matrix.
Field frobenius(const Jacobian& m);

}  // namespace normlab
