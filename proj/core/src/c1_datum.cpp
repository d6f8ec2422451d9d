#include <cmath>
#include <stdexcept>

#include "normlab/calculus.hpp"
#include "normlab/counterexamples.hpp"
#include "normlab/multiplier.hpp"

namespace normlab::data {

C1Datum make_c1_datum(double delta, double eta, int reg, const Grid& grid) {
  if (grid.dim() != 2) throw std::invalid_argument("make_c1_datum needs a 2D grid");
  if (grid.period() <= 4.5) throw std::invalid_argument("make_c1_datum: period must exceed 4.5 to hold the disc of radius 2");
  if (grid.spacing() > 0.05) throw std::invalid_argument("make_c1_datum: grid spacing above 0.05 cannot resolve the cutoff");
  if (reg < 0) throw std::invalid_argument("make_c1_datum: regularization index must be >= 0");
  const double c = regularization(reg);

  const Field cutoff = Field::sample(grid, [](double x, double y) { return disc_cutoff(std::hypot(x, y)); });
  const Field cut_x = to_physical(partial(cutoff, 1));
  const Field cut_y = to_physical(partial(cutoff, 2));
  const Field cut_lap = to_physical(combine(1.0, partial(partial(cutoff, 1), 1), 1.0, partial(partial(cutoff, 2), 2)));

  C1Datum out;
  out.delta = delta;
  out.eta = eta;
  out.reg = reg;
  out.Q = Field::sample(grid, [](double x, double y) { return harmonic_Q(x, y); });
  out.G = Field::sample(grid, [c](double x, double y) { return log_G(x, y, c); });

  // Stream function delta Delta(chi G) + eta chi y^2 / 2, so the shear part
  // of the velocity is eta (y, 0) where chi = 1.
  const int n = grid.n();
  RealBuffer stream(grid.size());
  const auto& chi = cutoff.values();
  const auto& cx = cut_x.values();
  const auto& cy = cut_y.values();
  const auto& cl = cut_lap.values();
  for (int i = 0; i < n; ++i) {
    const double x = grid.coordinate(i);
    for (int j = 0; j < n; ++j) {
      const double y = grid.coordinate(j);
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      const double s = x * x + y * y + c;
      const double q = harmonic_Q(x, y);
      const double g = q * std::log(s);
      const double gx = (4 * x * x * x - 12 * x * y * y) * std::log(s) + q * 2 * x / s;
      const double gy = (4 * y * y * y - 12 * x * x * y) * std::log(s) + q * 2 * y / s;
      const double lap_chi_g = chi[k] * c1::laplacian_G(x, y, c) + 2 * (cx[k] * gx + cy[k] * gy) + g * cl[k];
      stream[k] = delta * lap_chi_g + eta * 0.5 * y * y * chi[k];
    }
  }
  out.stream = Field::from_values(grid, std::move(stream));
  VectorField u = perp_gradient(out.stream);
  out.u = {to_physical(std::move(u[0])), to_physical(std::move(u[1]))};
  out.manifest = {{"generator", "c1"},
                  {"delta", format_number(delta)},
                  {"eta", format_number(eta)},
                  {"reg_index", std::to_string(reg)},
                  {"n", std::to_string(grid.n())},
                  {"period", format_number(grid.period())},
                  {"cutoff", "1 on r<=1, 0 on r>=2"}};
  return out;
}

Field bilinear_pressure_source(const VectorField& u) {
  const Jacobian du = jacobian(u);
  const auto& a = du[0][0].values();
  const auto& b = du[0][1].values();
  const auto& c = du[1][0].values();
  const auto& d = du[1][1].values();
  RealBuffer out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * a[k] + d[k] * d[k] + 2.0 * b[k] * c[k];
  return Field::from_values(u[0].grid(), std::move(out));
}

Jacobian pressure_hessian(const VectorField& u) {
  const Field source = to_spectral(bilinear_pressure_source(u));
  return {{{to_physical(apply_multiplier(riesz_pair(1, 1), source)), to_physical(apply_multiplier(riesz_pair(1, 2), source))},
           {to_physical(apply_multiplier(riesz_pair(2, 1), source)), to_physical(apply_multiplier(riesz_pair(2, 2), source))}}};
}

}  // namespace normlab::data
