#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "normlab/counterexamples.hpp"
#include "normlab/euler.hpp"
#include "normlab/fit.hpp"
#include "normlab/multiplier.hpp"
#include "normlab/norms.hpp"
#include "normlab/transport.hpp"

using namespace normlab;
using std::numbers::pi;

namespace {

double max_diff(const Field& a, const Field& b) { return linf_norm(combine(1.0, a, -1.0, b)); }

}  // namespace

TEST_CASE("diagnostics on a single mode") {
  const Grid g = grid2d(64, 2 * pi);
  const Field w = Field::sample(g, [](double x, double) { return std::cos(x); });
  // psi = cos x, u = (0, sin x): energy = (1/2) int sin^2 = pi^2, enstrophy = pi^2.
  CHECK(euler::energy(w) == doctest::Approx(pi * pi).epsilon(1e-12));
  CHECK(euler::enstrophy(w) == doctest::Approx(pi * pi).epsilon(1e-12));
  CHECK(euler::biot_savart_residual(w) <= 1e-12);
}

TEST_CASE("2D Euler: cellular stationarity and single-mode invariance") {
  const Grid g = grid2d(64, 2 * pi);
  euler::EulerState cell{data::cellular_vorticity(g), 0.0};
  const Field w0 = cell.omega;
  for (int i = 0; i < 20; ++i) euler::step_euler2d(cell, 0.05);
  CHECK(max_diff(cell.omega, w0) <= 1e-8);

  const Field mode = Field::sample(g, [](double x, double y) { return std::sin(2 * x + 3 * y); });
  euler::EulerState s{mode, 0.0};
  for (int i = 0; i < 10; ++i) euler::step_euler2d(s, 0.05);
  CHECK(max_diff(s.omega, mode) <= 1e-12);
  CHECK(euler::enstrophy(s.omega) == doctest::Approx(euler::enstrophy(mode)).epsilon(1e-13));
}

TEST_CASE("perturbed system: pure decay of the (0,1) mode") {
  const Grid g = grid2d(64, 2 * pi);
  const Field mode = Field::sample(g, [](double, double y) { return std::cos(y); });
  euler::EulerState s{mode, 0.0};
  for (int i = 0; i < 10; ++i) euler::step_perturbed(s, 0.05);
  CHECK(s.t == doctest::Approx(0.5));
  CHECK(max_diff(s.omega, scaled(mode, std::exp(-0.5))) <= 1e-12);
}

TEST_CASE("runs conserve energy, keep Biot-Savart and dissipate under forcing") {
  const Grid g = grid2d(64, 2 * pi);
  const Field w0 = euler::dealiased(transport::random_suite(g, 1, 4, 11).front());
  euler::RunOptions o;
  o.t_end = 0.5;
  o.dt_max = 0.02;
  const euler::RunResult free = euler::run_euler({w0, 0.0}, o);
  const auto& a = free.history.front();
  const auto& b = free.history.back();
  CHECK(std::abs(b.energy - a.energy) / a.energy <= 1e-6);
  CHECK(std::abs(b.enstrophy - a.enstrophy) / a.enstrophy <= 1e-6);
  CHECK(free.max_biot_savart_residual <= 1e-12);
  CHECK(std::abs(free.final_state.omega.coefficients()[0]) <= 1e-15);

  o.forced = true;
  const euler::RunResult forced = euler::run_euler({w0, 0.0}, o);
  CHECK(forced.enstrophy_monotone);
  CHECK(forced.history.back().enstrophy < a.enstrophy);

  euler::EulerSolver solver(g, false);
  euler::EulerState s{w0, 0.0};
  CHECK_THROWS(solver.step(s, 10.0));
}

TEST_CASE("2.5D transport") {
  const Grid g = grid2d(128, 2 * pi);
  euler::TwoAndHalfDState constant{transport::cellular_velocity(1.0),
                                   Field::sample(g, [](double, double) { return 1.0; }), 0.0};
  const auto flat = euler::evolve_25d(constant, 0.5, 0.01, 8);
  CHECK(max_diff(constant.u3, Field::sample(g, [](double, double) { return 1.0; })) <= 1e-13);
  CHECK(flat.back().grad_u3 <= 1e-10);

  euler::TwoAndHalfDState s{transport::cellular_velocity(1.0), Field::sample(g, [](double, double y) { return std::sin(y); }),
                            0.0};
  const auto rec = euler::evolve_25d(s, 1.0, 0.01, 8);
  CHECK(std::abs(rec.back().sup_u3 - rec.front().sup_u3) <= 1e-6);
  std::vector<double> t, gu;
  for (const auto& r : rec) {
    t.push_back(r.t);
    gu.push_back(r.grad_u3);
  }
  const LinearFit fit = fit_log_linear(t, gu);
  CHECK(fit.slope >= 0.8);
  CHECK(fit.r_squared >= 0.98);
}

TEST_CASE("Yudovich probe") {
  const Grid g = grid2d(256, 2 * pi);
  const std::vector<double> times{0.0, 0.5, 1.0};
  const auto recs = euler::yudovich_regularity_probe(g, 1.0, times, 2, 4, 4 * g.spacing());
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].alpha == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(recs[1].alpha < recs[0].alpha);
  CHECK(recs[2].alpha < recs[1].alpha);
  CHECK_THROWS(euler::yudovich_regularity_probe(g, 1.0, times, 2, 9, 4 * g.spacing()));
}

TEST_CASE("L^p growth probe anchors") {
  const Grid g = grid2d(128, 5.0);
  const data::C1Datum flat = data::make_c1_datum(0.0, 16 * 2.9e-5, 20, g);
  const std::vector<double> ps{2, 4, 8, 16};
  const std::vector<double> times{0.0};
  const euler::LpGrowthResult r0 = euler::lp_growth_probe(flat, 0.0, ps, times);
  // Without the singular part the profile stays flat in p.
  const auto [lo, hi] = std::minmax_element(r0.hessian_lp.begin(), r0.hessian_lp.end());
  CHECK(*hi / *lo <= 1.25);

  const data::C1Datum d = data::make_c1_datum(2.9e-5, 16 * 2.9e-5, 20, g);
  const euler::LpGrowthResult r = euler::lp_growth_probe(d, 0.0, ps, times);
  // At p = 2 the Riesz pairs act isometrically in sum: |D^2 p|_2 = |B|_2 up to the mean.
  Field b = apply_multiplier(identity_multiplier(), data::bilinear_pressure_source(d.u));
  b.edit_coefficients()[0] = 0.0;
  CHECK(r.hessian_lp[0] == doctest::Approx(lp_norm(b, 2.0)).epsilon(1e-6));
}
