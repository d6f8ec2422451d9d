#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "normlab/calculus.hpp"
#include "normlab/counterexamples.hpp"
#include "normlab/experiments.hpp"
#include "normlab/interpolation.hpp"
#include "normlab/littlewood_paley.hpp"
#include "normlab/multiplier.hpp"
#include "normlab/norms.hpp"
#include "oracles.hpp"

using namespace normlab;
using std::numbers::pi;

TEST_CASE("odd-odd indicator spectrum") {
  CHECK(data::odd_odd_indicator_spectrum(0.0, 0.0) == 4.0);
  for (double b : {-3.0, 0.0, 0.4, 17.0}) CHECK(std::abs(data::odd_odd_indicator_spectrum(pi, b)) < 1e-15);
  CHECK(data::odd_odd_indicator_spectrum(1.0, 1.0) == doctest::Approx(4 * std::sin(1.0) * std::sin(1.0)).epsilon(1e-15));
  CHECK(data::odd_odd_indicator_spectrum(1.0, 1.0) == doctest::Approx(2.8323).epsilon(1e-4));
}

TEST_CASE("quadrature of the R_2^2 g_N kernel matches the frozen table") {
  double previous = 0.0;
  for (const auto& [N, q] : oracle::gn_quadrature_table()) {
    const double v = data::rg_pointwise_quadrature(N);
    CHECK(v == doctest::Approx(q).epsilon(1e-7));
    CHECK(v > previous);
    previous = v;
  }
  // Consecutive differences settle toward a positive constant.
  const auto& t = oracle::gn_quadrature_table();
  const double d6 = t.at(6) - t.at(5), d7 = t.at(7) - t.at(6), d8 = t.at(8) - t.at(7);
  CHECK(d8 > 0.9);
  CHECK(std::abs(d8 - d7) < std::abs(d7 - d6) + 0.02);
  CHECK(data::rg_probe_prediction(3) == doctest::Approx(4 * t.at(2) / (pi * pi)).epsilon(1e-7));
}

TEST_CASE("Dirichlet kernel integrals") {
  const double si_pi = oracle::gauss_legendre([](double s) { return s == 0.0 ? 1.0 : std::sin(s) / s; }, 0.0, pi, 16);
  CHECK(data::dirichlet_kernel_sup() == doctest::Approx(2 * si_pi).epsilon(1e-7));
  CHECK(data::dirichlet_symmetric(0.0) == 0.0);
  CHECK(data::dirichlet_symmetric(1e4) == doctest::Approx(pi).epsilon(1e-4));
  CHECK(data::dirichlet_symmetric(pi) == doctest::Approx(2 * si_pi).epsilon(1e-12));
}

TEST_CASE("g_N datum: support, symmetry and Nyquist guard") {
  const Grid g = grid2d(256, 4 * pi);
  const data::GNDatum d = data::make_gN(3, g);
  const double extent = data::gN_frequency_extent(3);
  const int cols = g.spectral_cols();
  double outside = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < cols; ++j) {
      const double m = std::max(std::abs(g.mode(i)), j) * 2 * pi / g.period();
      if (m > extent + 1e-9) outside = std::max(outside, std::abs(d.field.coefficients()[static_cast<std::size_t>(i) * cols + j]));
    }
  }
  CHECK(outside == 0.0);
  double odd = 0.0;
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = d.field.value(i, j);
      // Odd in each rotated coordinate: (x, y) -> (y, x) and (x, y) -> (-y, -x).
      odd = std::max(odd, std::abs(d.field.value(j, i) + v));
      odd = std::max(odd, std::abs(d.field.value((n - j) % n, (n - i) % n) + v));
    }
  }
  CHECK(odd <= 1e-10);
  CHECK_THROWS_AS(data::make_gN(6, g), std::invalid_argument);
}

TEST_CASE("g_N at moderate resolution follows the quadrature") {
  const Grid g = grid2d(512, 4 * pi);
  std::vector<double> Ns, probe;
  for (int N = 2; N <= 5; ++N) {
    const data::GNDatum d = data::make_gN(N, g);
    const double v = std::abs(interpolate_at(apply_multiplier(riesz_pair(2, 2), d.field), d.probe_x, d.probe_y, 8));
    CHECK(v == doctest::Approx(4 * oracle::gn_quadrature_table().at(N - 1) / (pi * pi)).epsilon(0.05));
    CHECK(linf_norm(d.field) < 2.0);
    Ns.push_back(N);
    probe.push_back(v);
  }
  for (std::size_t i = 1; i < probe.size(); ++i) CHECK(probe[i] > probe[i - 1]);
}

TEST_CASE("cellular flow") {
  const Grid g = grid2d(64, 2 * pi);
  const VectorField u = data::cellular_flow(g);
  CHECK(u[0].value(0, 0) == 0.0);
  CHECK(u[1].value(0, 0) == 0.0);
  CHECK(linf_norm(divergence(u)) <= 1e-12);
  const Field w = data::cellular_vorticity(g);
  CHECK(linf_norm(combine(1.0, curl(u), -1.0, w)) < 1e-12);
  // u . grad omega vanishes: the flow is a stationary Euler solution.
  const VectorField gw = gradient(w);
  RealBuffer adv(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    adv[k] = u[0].values()[k] * gw[0].values()[k] + u[1].values()[k] * gw[1].values()[k];
  }
  CHECK(linf_norm(Field::from_values(g, adv)) <= 1e-10);
  CHECK_THROWS(data::cellular_flow(grid2d(64, 5.0)));
}

TEST_CASE("Yudovich cross") {
  const Grid g = grid2d(128, 2 * pi);
  const Field c = data::yudovich_cross(g, 8 * g.spacing());
  CHECK(interpolate_at(c, 2 * pi / 8, 2 * pi / 8, 6) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(c.coefficients()[0]) < 1e-14);
  const int n = g.n();
  double odd = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) odd = std::max(odd, std::abs(c.value((n - i) % n, j) + c.value(i, j)));
  }
  CHECK(odd <= 1e-10);
  CHECK_THROWS(data::yudovich_cross(g, g.spacing()));
}

TEST_CASE("harmonic quartic and its logarithmic companion") {
  CHECK(data::harmonic_Q(1.0, 1.0) == -4.0);
  const oracle::Poly lap = oracle::laplacian(oracle::quartic_Q());
  CHECK(lap.empty());
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = ud(gen), y = ud(gen);
    CHECK(data::c1::laplacian_Q(x, y) == 0.0);
    REQUIRE(data::harmonic_Q(x, y) == doctest::Approx(oracle::evaluate(oracle::quartic_Q(), x, y)).epsilon(1e-14));
  }
  CHECK(experiments::laplacian_Q_defect(10000, 3) == 0.0);
}

TEST_CASE("d_xxyy G carries -24 log(x^2 + y^2)") {
  for (double r : {1e-1, 1e-3, 1e-6}) {
    const double bounded = data::c1::dxxyy_G(r, 0.0) + 24 * std::log(r * r);
    CHECK(std::abs(bounded) < 200.0);
    CHECK(bounded == doctest::Approx(data::c1::remainder_H(1.0, 0.0)).epsilon(1e-9));
  }
  const experiments::FdSlope fd = experiments::fd_dxxyy_slope(0.3, 1, 8);
  CHECK(fd.slope / -24.0 >= 0.5);
  CHECK(fd.slope / -24.0 <= 2.0);
}

TEST_CASE("C^1 datum") {
  const Grid g = grid2d(128, 5.0);
  const data::C1Datum zero = data::make_c1_datum(0.0, 0.0, 20, g);
  CHECK(linf_norm(zero.u[0]) == 0.0);
  CHECK(linf_norm(zero.u[1]) == 0.0);

  const double delta = 2.9e-5, eta = 16 * delta;
  const data::C1Datum d = data::make_c1_datum(delta, eta, 20, g);
  CHECK(linf_norm(divergence(d.u)) <= 1e-10);
  CHECK(lipschitz_seminorm(d.u) <= 1.0);
}

TEST_CASE("bilinear pressure source") {
  const Grid g = grid2d(64, 2 * pi);
  CHECK(linf_norm(data::bilinear_pressure_source({Field(g), Field(g)})) == 0.0);
  // For the cellular flow B = 2 (cos^2 x cos^2 y - sin^2 x sin^2 y) = cos 2x + cos 2y.
  const Field b = data::bilinear_pressure_source(data::cellular_flow(g));
  const Field expected = Field::sample(g, [](double x, double y) { return std::cos(2 * x) + std::cos(2 * y); });
  CHECK(linf_norm(combine(1.0, b, -1.0, expected)) <= 1e-10);
  const Field det = jacobian_determinant(jacobian(data::cellular_flow(g)));
  CHECK(linf_norm(combine(1.0, b, 2.0, det)) <= 1e-10);
}
