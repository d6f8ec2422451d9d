#include <doctest.h>

#include <cmath>
#include <numbers>

#include "normlab/counterexamples.hpp"
#include "normlab/flow_map.hpp"
#include "normlab/frozen.hpp"
#include "normlab/interpolation.hpp"
#include "normlab/littlewood_paley.hpp"
#include "normlab/multiplier.hpp"
#include "normlab/norms.hpp"
#include "normlab/transport.hpp"

using namespace normlab;
using namespace normlab::transport;
using std::numbers::pi;

namespace {

double max_diff(const Field& a, const Field& b) { return linf_norm(combine(1.0, a, -1.0, b)); }

}  // namespace

TEST_CASE("flow maps: identity, translation, Gronwall") {
  const Grid g = grid2d(64, 2 * pi);
  const FlowMap id = integrate_flow(zero_velocity(), g, 0.7, 0.01);
  for (std::size_t k = 0; k < g.size(); ++k) {
    REQUIRE(id.forward_x[k] == 0.0);
    REQUIRE(id.forward_y[k] == 0.0);
  }
  CHECK(id.M() == 0.0);

  const FlowMap shift = integrate_flow(constant_velocity(1.0, 0.0), g, 0.5, 0.01);
  double err = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    err = std::max({err, std::abs(shift.forward_x[k] - 0.5), std::abs(shift.forward_y[k]),
                    std::abs(shift.backward_x[k] + 0.5)});
  }
  CHECK(err < 1e-13);

  const Velocity cell = cellular_velocity(1.0);
  const double lip = velocity_lipschitz(cell, g);
  CHECK(lip == doctest::Approx(1.0).epsilon(1e-12));
  const FlowMap phi = integrate_flow(cell, g, 1.0, 0.01);
  CHECK(phi.M() <= gronwall_bound(1.0, lip));
  CHECK(jacobian_deviation(integrate_flow(cell, g, 0.25, 0.01)) <= 1e-4);
  CHECK(composition_defect(integrate_flow(cell, grid2d(128, 2 * pi), 0.25, 0.01), 8) <= 1e-6);
  CHECK_THROWS(integrate_flow(cell, g, 1.0, 2.0));
}

TEST_CASE("commutator: identity, translation and linearity") {
  const Grid g = grid2d(64, 2 * pi);
  const Multiplier R = riesz_pair(2, 2);
  const auto suite = random_suite(g, 2, 6, 3);
  const FlowMap id = integrate_flow(zero_velocity(), g, 0.3, 0.01);
  CHECK(linf_norm(commutator_apply(R, id, suite[0])) <= 1e-10);

  const FlowMap shift = integrate_flow(constant_velocity(0.3, -0.2), g, 0.5, 0.01);
  CHECK(linf_norm(commutator_apply(R, shift, suite[0], 10)) <= 1e-6);

  const FlowMap phi = integrate_flow(cellular_velocity(0.1), g, 0.5, 0.01);
  const Field lhs = commutator_apply(R, phi, combine(2.0, suite[0], -0.5, suite[1]));
  const Field rhs = combine(2.0, commutator_apply(R, phi, suite[0]), -0.5, commutator_apply(R, phi, suite[1]));
  CHECK(max_diff(lhs, rhs) <= 1e-10);
}

TEST_CASE("commutator scan is linear in M") {
  const Grid g = grid2d(128, 2 * pi);
  const auto suite = random_suite(g, 2, 12, 7);
  const std::vector<double> targets{0.0, 0.025, 0.05};
  const std::vector<double> ps{2.0, 8.0};
  const auto rows = commutator_scaling_scan(cellular_velocity(1.0), g, targets, suite, riesz_pair(2, 2), ps);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].besov_ratio == 0.0);
  CHECK(rows[1].M == doctest::Approx(0.025).epsilon(1e-3));
  const double halving = rows[2].besov_ratio / rows[1].besov_ratio;
  CHECK(halving == doctest::Approx(2.0).epsilon(0.15));
  for (double p : ps) CHECK(rows[2].lp_ratio.at(p) / (p * rows[2].M) < 1.0);
  const std::vector<double> too_big{0.3};
  CHECK_THROWS(commutator_scaling_scan(cellular_velocity(1.0), g, too_big, suite, riesz_pair(2, 2)));
}

TEST_CASE("forced transport") {
  const Grid g1 = grid1d(256, 2 * pi);
  const Field f0 = Field::sample(g1, [](double x) { return std::sin(3 * x) + 0.5 * std::cos(x + 1); });
  const Field hf0 = apply_multiplier(hilbert(), f0);
  TransportOptions opts;
  opts.dt = 1e-2;
  const std::vector<double> marks{0.1, 0.5};
  const Trajectory tr = solve_forced_transport(f0, zero_velocity(), hilbert(), 1.0, opts, marks);
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const double t = tr.times[i];
    CHECK(max_diff(tr.states[i], combine(std::cos(t), f0, std::sin(t), hf0)) <= 1e-8);
  }
  REQUIRE(tr.times.size() == 4);
  CHECK(tr.times[1] == 0.1);

  const Grid g = grid2d(128, 2 * pi);
  Multiplier none{[](double, double) { return std::complex<double>(0.0, 0.0); }, ZeroModePolicy::zero, "zero"};
  const Field w = random_suite(g, 1, 6, 2).front();
  const Trajectory pure = solve_forced_transport(w, cellular_velocity(1.0), none, 0.5, opts);
  // Pulled back along the characteristics the solution is the datum itself.
  const FlowMap phi = integrate_flow(cellular_velocity(1.0), g, 0.5, 1e-2);
  const Field pulled = compose_displaced(pure.states.back(), phi.forward_x, phi.forward_y, 10);
  CHECK(max_diff(pulled, w) <= 1e-6);
  CHECK(std::abs(linf_norm(pulled) - linf_norm(w)) <= 1e-6);

  Field leaky = Field::sample(g, [](double x, double) { return std::cos(60 * x); });
  CHECK(dealias_leakage(leaky) > 0.1);
  CHECK_THROWS(solve_forced_transport(leaky, cellular_velocity(1.0), none, 0.1, opts));
}

TEST_CASE("Duhamel residual") {
  const Grid g = grid2d(64, 2 * pi);
  const Field f0 = Field::sample(g, [](double x, double y) { return std::sin(2 * x + 1) * std::cos(3 * y); });
  const Multiplier R = riesz_pair(2, 2);
  CHECK(duhamel_residual(f0, zero_velocity(), R, 0.25, 1e-2).residual <= 1e-8);
  CHECK(duhamel_residual(f0, cellular_velocity(1.0), R, 0.0, 1e-2).residual <= 1e-14);
  const double coarse = duhamel_residual(f0, cellular_velocity(1.0), R, 0.25, 0.0625).residual;
  const double fine = duhamel_residual(f0, cellular_velocity(1.0), R, 0.25, 0.03125).residual;
  CHECK(coarse / fine >= 8.0);
}

TEST_CASE("lower bound") {
  const Grid g1 = grid1d(256, 2 * pi);
  const Field f0 = Field::sample(g1, [](double x) { return std::sin(x) + 0.3 * std::sin(5 * x); });
  const LowerBoundRecord at0 = lower_bound_check(f0, zero_velocity(), hilbert(), 0.0, 1e-2, 1.0);
  CHECK(at0.sup_solution == doctest::Approx(at0.sup_linear).epsilon(1e-14));
  CHECK(at0.holds);
  const LowerBoundRecord small = lower_bound_check(f0, zero_velocity(), hilbert(), 0.1, 1e-2, 1.0);
  CHECK(small.holds);
  CHECK(small.correction == doctest::Approx(0.01 * small.besov_initial));
  CHECK(std::abs(small.sup_solution - small.sup_linear) <= small.correction);

  const Grid g = grid2d(256, 2 * pi);
  for (int N = 2; N <= 4; ++N) {
    const Field gn = data::make_gN(N, g).field;
    const LowerBoundRecord rec = lower_bound_check(gn, cellular_velocity(1.0), riesz_pair(2, 2), 0.1 / N, 2e-3, 1.0);
    CHECK(rec.holds);
  }
}

TEST_CASE("Besov growth along cellular transport") {
  const Grid g = grid2d(128, 2 * pi);
  TransportOptions opts;
  opts.dt = 1e-2;
  const Field b0 = random_suite(g, 1, 8, 6).front();
  for (const Multiplier& R : {riesz_pair(2, 2), riesz_pair(1, 2)}) {
    const Trajectory run = solve_forced_transport(b0, cellular_velocity(1.0), R, 0.5, opts);
    CHECK(besov_growth_exponent(b0, run.states.back(), 0.5, 1.0) <= frozen::kBesovGrowth);
  }
}
