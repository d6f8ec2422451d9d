#pragma once

#include <string>

#include "normlab/calculus.hpp"
#include "normlab/field.hpp"
#include "normlab/manifest.hpp"

namespace normlab::data {

/// 4 sin(xi1) sin(xi2) / (xi1 xi2), with the removable singularities filled
/// in (value 4 at the origin). Transform of the indicator of [-1,1]^2.
double odd_odd_indicator_spectrum(double xi1, double xi2);

/// Spectral window applied inside the truncation box. The Fejer window
/// (1 - |eta1|/K)_+ (1 - |eta2|/K)_+ has a nonnegative kernel, so it never
/// increases the sup norm.
enum class Taper { box, fejer };
std::string to_string(Taper taper);
Taper taper_from_string(const std::string& name);

/// Band-limited odd-odd sign datum.
///
/// The datum is sgn(y1) sgn(y2) on the square |y1|, |y2| <= 1, written in
/// coordinates y rotated by 45 degrees from the grid axes, with its spectrum
/// truncated to |eta1|, |eta2| <= 2^N in the same rotated frame. After the
/// rotation R_2^2 g_N carries a logarithm at the origin, the probe point.
struct GNDatum {
  int N = 0;
  Taper taper = Taper::box;
  Field field;
  double probe_x = 0.0;
  double probe_y = 0.0;
  Manifest manifest;
};

/// Throws std::invalid_argument when the truncated spectrum reaches the grid
/// Nyquist frequency.
GNDatum make_gN(int N, const Grid& grid, Taper taper = Taper::box);
/// Largest lattice frequency (per axis) occupied by g_N.
double gN_frequency_extent(int N);

/// Integral of sin^2(a) sin^2(b) / (a^2 + b^2) over [-2^N, 2^N]^2.
///
/// The double integral is reduced exactly to a one-dimensional integral of
/// cosine integrals along the square's boundary direction and evaluated by
/// adaptive Gauss-Kronrod panels. Throws std::runtime_error with the error
/// estimate when a panel fails to converge.
double rg_pointwise_quadrature(int N);
/// Value of R_2^2 g_N at the probe point predicted by the quadrature,
/// 4 Q(N-1) / pi^2 for the box taper on the whole plane.
double rg_probe_prediction(int N);

/// sup over (a, b) of |int_a^b sin(t)/t dt|, by a grid search over
/// [-100, 100] with spacing 1e-3.
double dirichlet_kernel_sup();
/// int_{-T}^{T} sin(t)/t dt.
double dirichlet_symmetric(double T);

/// (sin x cos y, -cos x sin y); requires L to be a multiple of 2 pi.
VectorField cellular_flow(const Grid& grid);
/// curl of the cellular flow, 2 sin x sin y.
Field cellular_vorticity(const Grid& grid);

/// Mollified sgn(x) sgn(y) on the torus. The ramp has total width
/// `smoothing`, which must span at least two cells.
Field yudovich_cross(const Grid& grid, double smoothing);

double harmonic_Q(double x, double y);
/// Q(x, y) log(x^2 + y^2 + reg).
double log_G(double x, double y, double reg);
/// 2^-n, the regularization used for index n.
double regularization(int index);

/// Closed forms of the derivatives that drive the C^1 construction.
namespace c1 {
/// Q_xx + Q_yy from the closed-form second derivatives of harmonic_Q.
double laplacian_Q(double x, double y);
/// Delta G with regularization c: 16 Q / s + 4 c Q / s^2, s = x^2 + y^2 + c.
double laplacian_G(double x, double y, double c);
/// Gradient of laplacian_G.
void grad_laplacian_G(double x, double y, double c, double& dx, double& dy);
/// Second derivatives of the unregularized Delta G (homogeneous of degree 0).
double dxx_laplacian_G(double x, double y);
double dxy_laplacian_G(double x, double y);
double dyy_laplacian_G(double x, double y);
/// d_xxyy G for c = 0: -24 log(x^2 + y^2) + H(x, y).
double dxxyy_G(double x, double y);
/// The bounded remainder H, homogeneous of degree 0.
double remainder_H(double x, double y);
/// Quadratic coefficient J in det(grad u) = eta delta d_xx Delta G + delta^2 J.
double quadratic_J(double x, double y);
}  // namespace c1

/// Cutoff profile: 1 for r <= 1, 0 for r >= 2, C-infinity in between.
double disc_cutoff(double r);

/// Velocity built from the log-harmonic G, cut off outside the disc of
/// radius 2. On the unit disc u = delta grad_perp Delta G + eta (y, 0).
struct C1Datum {
  double delta = 0.0;
  double eta = 0.0;
  int reg = 20;
  VectorField u;
  Field Q;
  Field G;
  Field stream;
  Manifest manifest;
};

C1Datum make_c1_datum(double delta, double eta, int reg, const Grid& grid);

/// B(grad u, grad u) = sum over l, k of d_k u_l d_l u_k = div((u . grad) u),
/// computed pointwise from spectral derivatives. Equals -2 det(grad u) for
/// divergence-free u in 2D. The pressure solves -Delta p = B.
Field bilinear_pressure_source(const VectorField& u);
/// D^2 p with entries R_i R_j B.
Jacobian pressure_hessian(const VectorField& u);

}  // namespace normlab::data
