#pragma once

#include <functional>
#include <span>
#include <vector>

#include "normlab/counterexamples.hpp"
#include "normlab/field.hpp"
#include "normlab/velocity.hpp"

namespace normlab::euler {

struct EulerDiagnostics {
  double t = 0.0;
  double energy = 0.0;     // (1/2) int |u|^2
  double enstrophy = 0.0;  // (1/2) int omega^2
  double sup_vorticity = 0.0;
  double besov = 0.0;  // B^{1/2}_{4,1} norm of omega, when requested
  double biot_savart_residual = 0.0;
};

/// Vorticity with derived velocity u = grad_perp (-Delta)^{-1} omega.
struct EulerState {
  Field omega;
  double t = 0.0;

  VectorField velocity() const;
};

double energy(const Field& omega);
double enstrophy(const Field& omega);
/// |curl u - omega|_inf with u rebuilt from omega.
double biot_savart_residual(const Field& omega);
EulerDiagnostics diagnose(const EulerState& s, bool with_besov = false);

/// Zeroes the coefficients outside the 2/3 box.
Field dealiased(const Field& f);

/// Pseudo-spectral integrating-factor RK4 for
///   omega_t + u . grad omega = F omega,
/// with F = 0 (2D Euler) or F = R_2^2 (the perturbed system, where
/// R_2^2 omega = d_y u_1). The nonlinear term is dealiased by the 2/3 rule.
class EulerSolver {
 public:
  EulerSolver(const Grid& grid, bool forced);

  bool forced() const noexcept { return forced_; }
  /// 0.5 dx / |u|_inf, capped at dt_max.
  double cfl_step(const EulerState& s, double dt_max) const;
  /// Throws std::invalid_argument when dt |u|_inf / dx exceeds 1.
  void step(EulerState& s, double dt);
  /// Same, also moving tracer points with the stage velocities.
  void step(EulerState& s, double dt, std::vector<double>& tracer_x, std::vector<double>& tracer_y);

 private:
  void nonlinear(const ComplexBuffer& w, ComplexBuffer& out, RealBuffer* u1_out, RealBuffer* u2_out);
  void advance(EulerState& s, double dt, std::vector<double>* tx, std::vector<double>* ty);

  Grid grid_;
  bool forced_;
  ComplexBuffer symbol_;
  std::vector<double> mask_, xi1_, xi2_, inv_k2_;
  RealBuffer u1_, u2_, gx_, gy_, prod_;
  ComplexBuffer work_;
  double cached_dt_ = -1.0;
  ComplexBuffer half_, full_;
};

void step_euler2d(EulerState& s, double dt);
void step_perturbed(EulerState& s, double dt);

struct RunOptions {
  double t_end = 1.0;
  double dt_max = 0.05;
  /// Fixed step when positive; otherwise the CFL step is used.
  double fixed_dt = 0.0;
  bool forced = false;
  bool with_besov = false;
  /// Diagnostics every this many steps (and at the end).
  int record_every = 1;
};

struct RunResult {
  EulerState final_state;
  std::vector<EulerDiagnostics> history;
  bool enstrophy_monotone = true;
  double max_biot_savart_residual = 0.0;
  int steps = 0;
};

RunResult run_euler(EulerState initial, const RunOptions& options);

/// u3 transported by a stationary horizontal flow.
struct TwoAndHalfDState {
  transport::Velocity u_h;
  Field u3;
  double t = 0.0;
};

struct TwoAndHalfDRecord {
  double t = 0.0;
  double grad_u3 = 0.0;     // |grad u3|_inf
  double sup_u3 = 0.0;      // |u3|_inf
  double sup_omega = 0.0;   // |(d_y u3, -d_x u3, omega_h)|_inf
};

/// Semi-Lagrangian advection of u3 with departure points from one RK4 step
/// of the reversed stationary velocity, interpolation of the given order.
/// Throws when the departure displacement exceeds two cells.
std::vector<TwoAndHalfDRecord> evolve_25d(TwoAndHalfDState& state, double T, double dt, int order = 6,
                                          int record_every = 1);

struct HolderRecord {
  double t = 0.0;
  double alpha = 1.0;
  std::vector<double> direction_slopes;
};

/// Euler run from the smoothed cross vorticity with tracers at r = 2^-k
/// (k in [k_min, k_max]) along several directions from the origin. The
/// Hölder exponent is the smallest fitted log-log slope of |Phi(r e)| against
/// r. Throws when a scale falls below two grid cells.
std::vector<HolderRecord> yudovich_regularity_probe(const Grid& grid, double T, std::span<const double> times,
                                                    int k_min, int k_max, double smoothing);

struct LpGrowthRecord {
  double t = 0.0;
  double p = 0.0;
  double grad_u = 0.0;  // |grad u(t)|_{L^p}, Frobenius
};

struct LpGrowthResult {
  std::vector<double> p;
  std::vector<double> hessian_lp;  // |D^2 p_0|_{L^p}, Frobenius
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<LpGrowthRecord> series;
};

/// Pressure Hessian L^p profile of the datum at t = 0, then a 2D Euler run
/// from the dealiased vorticity of the datum recording |grad u(t)|_{L^p}.
LpGrowthResult lp_growth_probe(const data::C1Datum& datum, double T, std::span<const double> p_list,
                               std::span<const double> times);

}  // namespace normlab::euler
