#include "normlab/counterexamples.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_expint.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace normlab::data {

double odd_odd_indicator_spectrum(double xi1, double xi2) {
  auto sinc = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
  return 4.0 * sinc(xi1) * sinc(xi2);
}

std::string to_string(Taper taper) { return taper == Taper::box ? "box" : "fejer"; }

Taper taper_from_string(const std::string& name) {
  if (name == "box") return Taper::box;
  if (name == "fejer") return Taper::fejer;
  throw std::invalid_argument("unknown taper '" + name + "' (expected box or fejer)");
}

double gN_frequency_extent(int N) { return std::numbers::sqrt2 * std::ldexp(1.0, N); }

GNDatum make_gN(int N, const Grid& grid, Taper taper) {
  if (grid.dim() != 2) throw std::invalid_argument("make_gN needs a 2D grid");
  if (N < 0) throw std::invalid_argument("make_gN: N must be nonnegative");
  if (gN_frequency_extent(N) >= grid.nyquist()) {
    std::ostringstream msg;
    msg << "2^" << N << " box rotated onto the lattice reaches frequency " << gN_frequency_extent(N)
        << " >= Nyquist " << grid.nyquist() << "; refine the grid or shrink the period";
    throw std::invalid_argument(msg.str());
  }
  const double cutoff = std::ldexp(1.0, N);
  const double area = grid.period() * grid.period();
  ComplexBuffer coeffs(grid.spectral_size());
  for_each_mode(grid, [&](std::size_t k, double xi1, double xi2, bool nyquist) {
    if (nyquist) return;
    const double e1 = (xi1 + xi2) / std::numbers::sqrt2;
    const double e2 = (-xi1 + xi2) / std::numbers::sqrt2;
    if (std::abs(e1) > cutoff || std::abs(e2) > cutoff) return;
    double weight = 1.0;
    if (taper == Taper::fejer) weight = (1.0 - std::abs(e1) / cutoff) * (1.0 - std::abs(e2) / cutoff);
    // Transform of sgn(y1) sgn(y2) on [-1,1]^2 is -16 sin^2(e1/2) sin^2(e2/2) / (e1 e2).
    const double spectrum = -std::sin(e1 / 2) * std::sin(e2 / 2) * odd_odd_indicator_spectrum(e1 / 2, e2 / 2);
    coeffs[k] = weight * spectrum / area;
  });
  GNDatum out{N, taper, to_physical(Field::from_coefficients(grid, std::move(coeffs))), 0.0, 0.0, {}};
  out.manifest = {{"generator", "gN"},
                  {"N", std::to_string(N)},
                  {"taper", to_string(taper)},
                  {"n", std::to_string(grid.n())},
                  {"period", format_number(grid.period())},
                  {"frame", "rotated 45 degrees"},
                  {"probe", "origin"}};
  return out;
}

namespace {

// Cin(x) = int_0^x (1 - cos t)/t dt, even and entire.
double cin(double x) {
  x = std::abs(x);
  if (x == 0.0) return 0.0;
  if (x < 1.0) {
    double term = 1.0;
    double sum = 0.0;
    const double x2 = x * x;
    for (int k = 1; k < 30; ++k) {
      term *= -x2 / ((2.0 * k - 1) * (2.0 * k));
      const double add = -term / (2.0 * k);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::numbers::egamma + std::log(x) - gsl_sf_Ci(x);
}

struct BoundaryIntegrand {
  double T;
};

double boundary_integrand(double u, void* params) {
  const double T = static_cast<BoundaryIntegrand*>(params)->T;
  const double v = cin(2 * T) + cin(2 * T * u) - 0.5 * cin(2 * T * (1 - u)) - 0.5 * cin(2 * T * (1 + u));
  return v / (1 + u * u);
}

}  // namespace

double rg_pointwise_quadrature(int N) {
  if (N > 20 || N < -20) throw std::invalid_argument("rg_pointwise_quadrature: N must lie in [-20, 20]");
  // Polar coordinates around the origin reduce the radial integral to cosine
  // integrals; the remaining variable is u = tan(theta) on [0, 1], and the
  // symmetry in theta -> pi/2 - theta and the four quadrants give the factor 2.
  BoundaryIntegrand params{std::ldexp(1.0, N)};
  gsl_function fn{&boundary_integrand, &params};
  std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
      gsl_integration_workspace_alloc(200), &gsl_integration_workspace_free);
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  // Each panel covers about four oscillation periods pi / T of the integrand.
  const int panels = std::max(1, static_cast<int>(std::ceil(params.T / (4.0 * std::numbers::pi))));
  double total = 0.0;
  double total_err = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) / panels;
    const double b = static_cast<double>(p + 1) / panels;
    double value = 0.0;
    double err = 0.0;
    const int status = gsl_integration_qag(&fn, a, b, 1e-13, 1e-11, 200, GSL_INTEG_GAUSS21, ws.get(), &value, &err);
    if (status != GSL_SUCCESS) {
      gsl_set_error_handler(old);
      std::ostringstream msg;
      msg << "quadrature did not converge on [" << a << ", " << b << "], estimate " << value << " +/- " << err;
      throw std::runtime_error(msg.str());
    }
    total += value;
    total_err += err;
  }
  gsl_set_error_handler(old);
  (void)total_err;
  return 2.0 * total;
}

double rg_probe_prediction(int N) {
  return 4.0 * rg_pointwise_quadrature(N - 1) / (std::numbers::pi * std::numbers::pi);
}

double dirichlet_symmetric(double T) { return 2.0 * gsl_sf_Si(T); }

double dirichlet_kernel_sup() {
  // |int_a^b| = |Si(b) - Si(a)|, so the sup over pairs is max Si - min Si.
  const double span = 100.0;
  const double step = 1e-3;
  const long count = static_cast<long>(2 * span / step);
  double hi = 0.0;
  double lo = 0.0;
  for (long i = 0; i <= count; ++i) {
    const double t = -span + step * static_cast<double>(i);
    const double v = gsl_sf_Si(t);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return hi - lo;
}

namespace {

void require_two_pi_multiple(const Grid& grid) {
  const double ratio = grid.period() / (2.0 * std::numbers::pi);
  if (std::abs(ratio - std::round(ratio)) > 1e-12 * ratio || std::round(ratio) < 1.0) {
    throw std::invalid_argument("cellular flow needs a period that is a multiple of 2 pi");
  }
}

double smooth_step_down(double t) {
  auto bump = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  const double a = bump(1.0 - t);
  const double b = bump(t);
  return a / (a + b);
}

}  // namespace

VectorField cellular_flow(const Grid& grid) {
  if (grid.dim() != 2) throw std::invalid_argument("cellular_flow needs a 2D grid");
  require_two_pi_multiple(grid);
  return {Field::sample(grid, [](double x, double y) { return std::sin(x) * std::cos(y); }),
          Field::sample(grid, [](double x, double y) { return -std::cos(x) * std::sin(y); })};
}

Field cellular_vorticity(const Grid& grid) {
  if (grid.dim() != 2) throw std::invalid_argument("cellular_vorticity needs a 2D grid");
  require_two_pi_multiple(grid);
  return Field::sample(grid, [](double x, double y) { return 2.0 * std::sin(x) * std::sin(y); });
}

Field yudovich_cross(const Grid& grid, double smoothing) {
  if (grid.dim() != 2) throw std::invalid_argument("yudovich_cross needs a 2D grid");
  if (!(smoothing >= 2.0 * grid.spacing())) {
    throw std::invalid_argument("yudovich_cross: smoothing must span at least two grid cells");
  }
  const double half = grid.period() / 2.0;
  // Odd in each variable by construction; vanishes at 0 and at the period seam.
  auto signum = [half, smoothing](double s) {
    const double a = std::abs(s);
    const double d = std::min(a, half - a);
    const double mag = 1.0 - smooth_step_down(2.0 * d / smoothing);
    return s > 0 ? mag : (s < 0 ? -mag : 0.0);
  };
  return Field::sample(grid, [&](double x, double y) { return signum(x) * signum(y); });
}

double harmonic_Q(double x, double y) {
  const double x2 = x * x;
  const double y2 = y * y;
  return x2 * x2 + y2 * y2 - 6.0 * x2 * y2;
}

double log_G(double x, double y, double reg) { return harmonic_Q(x, y) * std::log(x * x + y * y + reg); }

double regularization(int index) { return std::ldexp(1.0, -index); }

namespace c1 {

double laplacian_Q(double x, double y) {
  const double qxx = 12.0 * x * x - 12.0 * y * y;
  const double qyy = 12.0 * y * y - 12.0 * x * x;
  return qxx + qyy;
}

double laplacian_G(double x, double y, double c) {
  const double q = harmonic_Q(x, y);
  const double s = x * x + y * y + c;
  return 16.0 * q / s + 4.0 * c * q / (s * s);
}

void grad_laplacian_G(double x, double y, double c, double& dx, double& dy) {
  const double q = harmonic_Q(x, y);
  const double qx = 4 * x * x * x - 12 * x * y * y;
  const double qy = 4 * y * y * y - 12 * x * x * y;
  const double s = x * x + y * y + c;
  const double s2 = s * s;
  const double s3 = s2 * s;
  dx = 16 * qx / s - 32 * x * q / s2 + 4 * c * qx / s2 - 16 * c * x * q / s3;
  dy = 16 * qy / s - 32 * y * q / s2 + 4 * c * qy / s2 - 16 * c * y * q / s3;
}

double dxx_laplacian_G(double x, double y) {
  const double x2 = x * x, y2 = y * y, r2 = x2 + y2;
  return 32 * (x2 * x2 * x2 + 3 * x2 * x2 * y2 + 27 * x2 * y2 * y2 - 7 * y2 * y2 * y2) / (r2 * r2 * r2);
}

double dxy_laplacian_G(double x, double y) {
  const double r2 = x * x + y * y;
  return -1024 * x * x * x * y * y * y / (r2 * r2 * r2);
}

double dyy_laplacian_G(double x, double y) {
  const double x2 = x * x, y2 = y * y, r2 = x2 + y2;
  return -32 * (7 * x2 * x2 * x2 - 27 * x2 * x2 * y2 - 3 * x2 * y2 * y2 - y2 * y2 * y2) / (r2 * r2 * r2);
}

double remainder_H(double x, double y) {
  const double x2 = x * x, y2 = y * y, r2 = x2 + y2;
  const double p8 = 17 * x2 * x2 * x2 * x2 + 68 * x2 * x2 * x2 * y2 - 90 * x2 * x2 * y2 * y2 +
                    68 * x2 * y2 * y2 * y2 + 17 * y2 * y2 * y2 * y2;
  return -4.0 * p8 / (r2 * r2 * r2 * r2);
}

double dxxyy_G(double x, double y) { return -24.0 * std::log(x * x + y * y) + remainder_H(x, y); }

double quadratic_J(double x, double y) {
  const double a = dxy_laplacian_G(x, y);
  return dxx_laplacian_G(x, y) * dyy_laplacian_G(x, y) - a * a;
}

}  // namespace c1

double disc_cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return smooth_step_down(r - 1.0);
}

}  // namespace normlab::data
