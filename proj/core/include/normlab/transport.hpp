#pragma once

#include <map>
#include <span>
#include <vector>

#include "normlab/field.hpp"
#include "normlab/flow_map.hpp"
#include "normlab/littlewood_paley.hpp"
#include "normlab/multiplier.hpp"
#include "normlab/velocity.hpp"

namespace normlab::transport {

inline constexpr int kDefaultInterpolationOrder = 6;

/// [R, Phi] w = R(w o Phi) - (R w) o Phi, with composition by Lagrange
/// interpolation of the given order. Throws when the map moves a point by
/// more than half a period.
Field commutator_apply(const Multiplier& R, const FlowMap& phi, const Field& w,
                       int order = kDefaultInterpolationOrder);

struct CommutatorRow {
  double target_M = 0.0;
  double t = 0.0;
  double M = 0.0;
  /// sup over the suite of |[R,Phi]w|_B / |w|_B in B^{1/2}_{4,1}.
  double besov_ratio = 0.0;
  /// sup over the suite of |[R,Phi]w|_{L^p} / |w|_{L^p}, keyed by p.
  std::map<double, double> lp_ratio;
};

/// For each target M, finds the flow time whose map has that M (secant
/// iteration on the measured M) and records the commutator ratios.
/// Targets above 0.2 are rejected.
std::vector<CommutatorRow> commutator_scaling_scan(const Velocity& u, const Grid& grid,
                                                   std::span<const double> targets,
                                                   std::span<const Field> suite, const Multiplier& R,
                                                   std::span<const double> lp_exponents = {},
                                                   int order = kDefaultInterpolationOrder);

/// Random band-limited fields with unit L^inf norm and modes below max_mode.
std::vector<Field> random_suite(const Grid& grid, std::size_t count, int max_mode, std::uint64_t seed);

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
};

struct TransportOptions {
  double dt = 1e-3;
  bool dealias = true;
  double blowup = 1e6;
};

/// f_t + u . grad f = R f by integrating-factor RK4 in spectral space with the
/// 2/3 rule applied to u . grad f. Snapshots are taken at every requested
/// time (and at 0 and T); steps are shortened so snapshots land on steps.
Trajectory solve_forced_transport(const Field& f0, const Velocity& u, const Multiplier& R, double T,
                                  const TransportOptions& options, std::span<const double> snapshot_times = {});

/// Max modulus of coefficients outside the 2/3 dealiasing box.
double dealias_leakage(const Field& f);

struct DuhamelResult {
  double t = 0.0;
  double dt = 0.0;
  int steps = 0;
  int order = 0;
  double residual = 0.0;
  double scale = 0.0;  // |f(t) o Phi(t)|_inf
};

/// Runs the solver and the characteristics together and compares f(t) o Phi(t)
/// with exp(tR) f0 - int_0^t exp(R(t-s)) [R, Phi(s)] f(s) ds. The integral is
/// accumulated with composite Simpson weights on the step nodes.
DuhamelResult duhamel_residual(const Field& f0, const Velocity& u, const Multiplier& R, double t, double dt,
                               int order = 10);

struct LowerBoundRecord {
  double t = 0.0;
  double sup_solution = 0.0;
  double sup_linear = 0.0;
  double besov_initial = 0.0;
  double lipschitz = 0.0;
  double correction = 0.0;  // t^2 (1 + Lip exp(C t Lip)) |f0|_B
  double constant = 0.0;
  bool holds = false;
};

/// |f(t)|_inf against |t R f0 + f0|_inf - C t^2 (1 + Lip e^{C t Lip}) |f0|_B,
/// with B = B^{1/2}_{2d,1}.
LowerBoundRecord lower_bound_check(const Field& f0, const Velocity& u, const Multiplier& R, double t, double dt,
                                   double constant);

/// log(|f(t)|_B / |f0|_B) / (t |u|_Lip), the effective constant in the
/// Besov growth bound, for B = B^{1/2}_{2d,1}.
double besov_growth_exponent(const Field& f0, const Field& ft, double t, double lipschitz);

}  // namespace normlab::transport
