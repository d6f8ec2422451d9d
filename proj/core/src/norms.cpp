#include "normlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace normlab {

double linf_norm(const Field& f) {
  const Field p = f.has_values() ? f : to_physical(f);
  double m = 0.0;
  for (double v : p.values()) m = std::max(m, std::abs(v));
  return m;
}

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) return linf_norm(f);
  const Field ph = f.has_values() ? f : to_physical(f);
  const double scale = linf_norm(ph);
  if (scale == 0.0) return 0.0;
  // Normalize by the max to keep |f|^p inside double range for large p.
  double sum = 0.0;
  for (double v : ph.values()) sum += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(sum * f.grid().cell_measure(), 1.0 / p);
}

double l2_norm_spectral(const Field& f) {
  const Field s = f.has_coefficients() ? f : to_spectral(f);
  const Grid& g = f.grid();
  const auto& c = s.coefficients();
  const int cols = g.spectral_cols();
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int j = static_cast<int>(g.dim() == 1 ? k : k % static_cast<std::size_t>(cols));
    sum += hermitian_weight(g, j) * std::norm(c[k]);
  }
  const double volume = g.dim() == 1 ? g.period() : g.period() * g.period();
  return std::sqrt(sum * volume);
}

double lipschitz_seminorm(const Field& f) {
  if (f.grid().dim() == 1) return linf_norm(partial(f, 1));
  const Field gx = to_physical(partial(f, 1));
  const Field gy = to_physical(partial(f, 2));
  double m = 0.0;
  const auto& a = gx.values();
  const auto& b = gy.values();
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::hypot(a[k], b[k]));
  return m;
}

double max_operator_norm(const Jacobian& du) {
  const auto& a = du[0][0].values();
  const auto& b = du[0][1].values();
  const auto& c = du[1][0].values();
  const auto& d = du[1][1].values();
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, operator_norm(a[k], b[k], c[k], d[k]));
  return m;
}

double lipschitz_seminorm(const VectorField& u) { return max_operator_norm(jacobian(u)); }

Field frobenius(const Jacobian& m) {
  const auto& a = m[0][0].values();
  const auto& b = m[0][1].values();
  const auto& c = m[1][0].values();
  const auto& d = m[1][1].values();
  RealBuffer out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::sqrt(a[k] * a[k] + b[k] * b[k] + c[k] * c[k] + d[k] * d[k]);
  return Field::from_values(m[0][0].grid(), std::move(out));
}

}  // namespace normlab
