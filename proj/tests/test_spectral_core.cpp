#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "normlab/calculus.hpp"
#include "normlab/field.hpp"
#include "normlab/field_io.hpp"
#include "normlab/multiplier.hpp"
#include "normlab/norms.hpp"
#include "normlab/transport.hpp"
#include "oracles.hpp"

using namespace normlab;
using std::numbers::pi;

namespace {

Field smooth_random(const Grid& g, unsigned seed) {
  return transport::random_suite(g, 1, 6, seed).front();
}

double max_diff(const Field& a, const Field& b) { return linf_norm(combine(1.0, a, -1.0, b)); }

}  // namespace

TEST_CASE("grid rejects sizes that are not powers of two") {
  CHECK_THROWS(grid2d(12, 1.0));
  CHECK_THROWS(grid2d(4, 1.0));
  CHECK_THROWS(grid1d(64, -1.0));
  const Grid g = grid2d(16, 4.0);
  CHECK(g.wavenumber(1) == doctest::Approx(2 * pi / 4.0));
  CHECK(g.wavenumber(15) == doctest::Approx(-2 * pi / 4.0));
}

TEST_CASE("constant field has a single zero mode equal to 1") {
  const Grid g = grid2d(16, 2 * pi);
  const Field one = Field::sample(g, [](double, double) { return 1.0; });
  const auto& c = one.coefficients();
  CHECK(std::abs(c[0] - 1.0) < 1e-15);
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(std::abs(c[k]) < 1e-15);
}

TEST_CASE("sin(2 pi x / L) occupies exactly the modes +-1") {
  const Grid g = grid1d(64, 3.0);
  const Field f = Field::sample(g, [](double x) { return std::sin(2 * pi * x / 3.0); });
  const auto& c = f.coefficients();
  int nonzero = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (std::abs(c[k]) > 1e-14) {
      ++nonzero;
      CHECK(k == 1);
    }
  }
  CHECK(nonzero == 1);  // the half spectrum stores +1; -1 is its conjugate
  CHECK(std::abs(c[1] - std::complex<double>(0.0, -0.5)) < 1e-14);
}

TEST_CASE("FFT coefficients agree with a direct DFT") {
  const Grid g = grid2d(16, 2 * pi);
  const Field f = Field::sample(g, [](double x, double y) { return std::exp(std::sin(x) * std::cos(2 * y)); });
  const int cols = g.spectral_cols();
  for (int i : {0, 1, 3, 15}) {
    for (int j : {0, 2, 5}) {
      const auto expected = oracle::direct_coefficient(f, g.mode(i), j);
      CHECK(std::abs(f.coefficients()[static_cast<std::size_t>(i) * cols + j] - expected) < 1e-13);
    }
  }
}

TEST_CASE("round trip and Hermitian symmetry") {
  const Grid g = grid2d(64, 2 * pi);
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  RealBuffer v(g.size());
  for (double& x : v) x = nd(gen);
  const Field f = Field::from_values(g, v);
  const Field back = Field::from_coefficients(g, f.coefficients());
  double err = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    err = std::max(err, std::abs(back.values()[k] - v[k]));
    scale = std::max(scale, std::abs(v[k]));
  }
  CHECK(err / scale <= 1e-12);
  // Column j = 0 holds both xi2 = 0 halves: c(-k1, 0) = conj c(k1, 0).
  const auto& c = f.coefficients();
  const int cols = g.spectral_cols();
  for (int i = 1; i < g.n(); ++i) {
    CHECK(std::abs(c[static_cast<std::size_t>(i) * cols] - std::conj(c[static_cast<std::size_t>(g.n() - i) * cols])) < 1e-12);
  }
}

TEST_CASE("non-finite samples are rejected on transform") {
  const Grid g = grid1d(8, 1.0);
  RealBuffer v(8, 0.0);
  v[3] = std::nan("");
  const Field f = Field::from_values(g, v);
  CHECK_THROWS_AS(f.coefficients(), std::domain_error);
}

TEST_CASE("Hilbert transform") {
  const Grid g = grid1d(128, 2 * pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  const Field c = Field::sample(g, [](double x) { return -std::cos(x); });
  CHECK(max_diff(apply_multiplier(hilbert(), s), c) < 1e-14);
  const Field f = Field::sample(g, [](double x) { return std::exp(std::cos(3 * x)) - std::cyl_bessel_i(0.0, 1.0); });
  Field mean_zero = f;
  mean_zero.edit_coefficients()[0] = 0.0;
  mean_zero.edit_coefficients()[64] = 0.0;
  const Field hh = apply_multiplier(hilbert(), apply_multiplier(hilbert(), mean_zero));
  CHECK(max_diff(hh, scaled(mean_zero, -1.0)) < 1e-12);
}

TEST_CASE("Riesz pairs on single modes") {
  const Grid g = grid2d(32, 2 * pi);
  const Field cc = Field::sample(g, [](double x, double y) { return std::cos(x) * std::cos(y); });
  CHECK(max_diff(apply_multiplier(riesz_pair(2, 2), cc), scaled(cc, -0.5)) < 1e-14);
  const Field m10 = Field::sample(g, [](double x, double) { return std::cos(x); });
  const Field m01 = Field::sample(g, [](double, double y) { return std::sin(y); });
  CHECK(linf_norm(apply_multiplier(riesz_pair(2, 2), m10)) < 1e-15);
  CHECK(max_diff(apply_multiplier(riesz_pair(2, 2), m01), scaled(m01, -1.0)) < 1e-14);

  Field w = smooth_random(g, 5);
  w.edit_coefficients()[0] = 0.0;
  const Field sum = combine(1.0, apply_multiplier(riesz_pair(1, 1), w), 1.0, apply_multiplier(riesz_pair(2, 2), w));
  CHECK(max_diff(sum, scaled(w, -1.0)) < 1e-12);
}

TEST_CASE("zero-mode policies") {
  const Grid g = grid2d(16, 2 * pi);
  const Field one = Field::sample(g, [](double, double) { return 1.0; });
  CHECK(linf_norm(apply_multiplier(riesz_pair(1, 2), one)) == 0.0);
  Multiplier keep = riesz_pair(1, 1);
  keep.zero_mode = ZeroModePolicy::identity;
  CHECK(linf_norm(combine(1.0, apply_multiplier(keep, one), -1.0, one)) < 1e-15);
  Multiplier strict = inverse_laplacian();
  strict.zero_mode = ZeroModePolicy::error;
  CHECK_THROWS(apply_multiplier(strict, one));
}

TEST_CASE("Nyquist lines are annihilated") {
  const Grid g = grid1d(16, 2 * pi);
  const Field alt = Field::sample(g, [](double x) { return std::cos(8 * x); });
  CHECK(linf_norm(apply_multiplier(identity_multiplier(), alt)) < 1e-15);
}

TEST_CASE("exp of a multiplier") {
  const Grid g1 = grid1d(64, 2 * pi);
  const Field s = Field::sample(g1, [](double x) { return std::sin(x); });
  CHECK(max_diff(apply_multiplier(exp_of_multiplier(hilbert(), 0.0), s), s) < 1e-15);
  const Field c = Field::sample(g1, [](double x) { return -std::cos(x); });
  CHECK(max_diff(apply_multiplier(exp_of_multiplier(hilbert(), pi / 2), s), c) < 1e-10);

  const Grid g = grid2d(32, 2 * pi);
  const Field m01 = Field::sample(g, [](double, double y) { return std::cos(y); });
  const Field decayed = apply_multiplier(exp_of_multiplier(riesz_pair(2, 2), 0.7), m01);
  CHECK(max_diff(decayed, scaled(m01, std::exp(-0.7))) < 1e-14);

  const Field w = smooth_random(g, 9);
  const Multiplier R = riesz_pair(1, 2);
  const Field lhs = apply_multiplier(exp_of_multiplier(R, 0.3 + 0.45), w);
  const Field rhs = apply_multiplier(exp_of_multiplier(R, 0.3), apply_multiplier(exp_of_multiplier(R, 0.45), w));
  CHECK(max_diff(lhs, rhs) < 1e-10);

  Multiplier grow{[](double a, double) { return std::complex<double>(a * a * 100.0, 0.0); }, ZeroModePolicy::zero, "g"};
  CHECK_THROWS_AS(apply_multiplier(exp_of_multiplier(grow, 10.0), Field::sample(g1, [](double x) { return std::sin(x); })),
                  std::overflow_error);
}

TEST_CASE("Biot-Savart law") {
  const Grid g = grid2d(64, 2 * pi);
  const Field cc = Field::sample(g, [](double x, double y) { return std::cos(x) * std::cos(y); });
  VectorField u = perp_grad_inv_laplacian(cc);
  // psi = (1/2) cos x cos y, u = (d_y psi, -d_x psi).
  const Field u1 = Field::sample(g, [](double x, double y) { return -0.5 * std::cos(x) * std::sin(y); });
  const Field u2 = Field::sample(g, [](double x, double y) { return 0.5 * std::sin(x) * std::cos(y); });
  CHECK(max_diff(u[0], u1) < 1e-14);
  CHECK(max_diff(u[1], u2) < 1e-14);
  CHECK(linf_norm(divergence(u)) < 1e-12);
  CHECK(max_diff(curl(u), cc) < 1e-12);

  const Field zero(g);
  CHECK(linf_norm(perp_grad_inv_laplacian(zero)[0]) == 0.0);

  Field w = smooth_random(g, 21);
  w.edit_coefficients()[0] = 0.0;
  u = perp_grad_inv_laplacian(w);
  CHECK(max_diff(partial(u[0], 2), apply_multiplier(riesz_pair(2, 2), w)) < 1e-12);
  CHECK(linf_norm(divergence(u)) < 1e-12);
}

TEST_CASE("norms on grid points") {
  const Grid g = grid2d(64, 2 * pi);
  const Field s = Field::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  CHECK(linf_norm(s) == doctest::Approx(1.0));
  CHECK(lp_norm(s, 2.0) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(l2_norm_spectral(s) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(lipschitz_seminorm(s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("binary container round trip and header layout") {
  const Grid g = grid2d(16, 3.5);
  const Field f = smooth_random(g, 2);
  std::stringstream buf;
  write_field(buf, f);
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 32 + 8 * 256);
  CHECK(bytes.substr(0, 8) == "NLFIELD1");
  CHECK(static_cast<unsigned char>(bytes[8]) == 2);
  CHECK(static_cast<unsigned char>(bytes[12]) == 16);
  const Field back = read_field(buf);
  CHECK(back.grid() == g);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(back.values()[k] == f.values()[k]);
  std::stringstream bad("NOTFIELD");
  CHECK_THROWS(read_field(bad));

  std::ostringstream csv;
  write_field_csv(csv, Field::sample(grid1d(8, 1.0), [](double x) { return x; }));
  CHECK(csv.str().rfind("i,x,value", 0) == 0);
}
