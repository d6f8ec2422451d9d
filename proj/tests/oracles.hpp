#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "normlab/field.hpp"

namespace oracle {

/// Frozen values of the integral of sin^2(a) sin^2(b) / (a^2 + b^2) over
/// [-2^N, 2^N]^2, from a tensor Gauss-Legendre rule (24 nodes per panel, panels graded
/// toward the origin) run once in double precision.
inline const std::map<int, double>& gn_quadrature_table() {
  static const std::map<int, double> table{
      {0, 0.30456912189274066}, {1, 1.819424654900024},  {2, 2.5311717827593228},
      {3, 3.820106662243484},   {4, 4.865539415554779},  {5, 5.956872455667221},
      {6, 7.058938523994035},   {7, 8.162807242671184},  {8, 9.245209816955017},
  };
  return table;
}

/// Coefficient of exp(i (xi1 x + xi2 y)) by a direct O(n^4) sum.
inline std::complex<double> direct_coefficient(const normlab::Field& f, int k1, int k2) {
  const normlab::Grid& g = f.grid();
  const int n = g.n();
  const double w = 2.0 * std::numbers::pi / g.period();
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double phase = -w * (k1 * g.coordinate(i) + k2 * g.coordinate(j));
      acc += f.value(i, j) * std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return acc / double(n) / double(n);
}

/// Bivariate polynomial as a map from exponent pairs to coefficients.
using Poly = std::map<std::pair<int, int>, double>;

inline Poly derive(const Poly& p, int axis) {
  Poly out;
  for (const auto& [e, c] : p) {
    const int k = axis == 0 ? e.first : e.second;
    if (k == 0) continue;
    const std::pair<int, int> d = axis == 0 ? std::pair{e.first - 1, e.second} : std::pair{e.first, e.second - 1};
    out[d] += c * k;
  }
  return out;
}

inline double evaluate(const Poly& p, double x, double y) {
  double s = 0.0;
  for (const auto& [e, c] : p) s += c * std::pow(x, e.first) * std::pow(y, e.second);
  return s;
}

/// x^4 + y^4 - 6 x^2 y^2.
inline Poly quartic_Q() { return Poly{{{4, 0}, 1.0}, {{0, 4}, 1.0}, {{2, 2}, -6.0}}; }

inline Poly laplacian(const Poly& p) {
  Poly out = derive(derive(p, 0), 0);
  for (const auto& [e, c] : derive(derive(p, 1), 1)) out[e] += c;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0.0 ? out.erase(it) : std::next(it);
  return out;
}

/// Composite Gauss-Legendre (5 points per panel) of a smooth function on [a, b].
template <class Fn>
double gauss_legendre(Fn&& fn, double a, double b, int panels) {
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                              0.2369268850561891};
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int k = 0; k < 5; ++k) s += w[k] * fn(mid + 0.5 * h * x[k]);
  }
  return 0.5 * h * s;
}

}  // namespace oracle
