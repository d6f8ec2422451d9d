#include "normlab/euler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "normlab/calculus.hpp"
#include "normlab/fit.hpp"
#include "normlab/flow_map.hpp"
#include "normlab/interpolation.hpp"
#include "normlab/littlewood_paley.hpp"
#include "normlab/multiplier.hpp"
#include "normlab/norms.hpp"

namespace normlab::euler {

namespace {

void require_2d(const Grid& g, const char* what) {
  if (g.dim() != 2) throw std::invalid_argument(std::string(what) + " needs a 2D grid");
}

std::vector<double> dealias_mask(const Grid& g) {
  std::vector<double> mask(g.spectral_size(), 1.0);
  const double cut = g.n() / 3.0;
  const int cols = g.spectral_cols();
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const int j = static_cast<int>(k % cols);
    const int i = g.dim() == 1 ? 0 : static_cast<int>(k / cols);
    if (std::abs(g.mode(j)) > cut || (g.dim() == 2 && std::abs(g.mode(i)) > cut)) mask[k] = 0.0;
  }
  return mask;
}

double weighted_sum(const Grid& g, const ComplexBuffer& c, const std::function<double(double, double)>& weight) {
  const int cols = g.spectral_cols();
  double s = 0.0;
  for_each_mode(g, [&](std::size_t k, double xi1, double xi2, bool) {
    s += hermitian_weight(g, static_cast<int>(k % cols)) * weight(xi1, xi2) * std::norm(c[k]);
  });
  return s;
}

}  // namespace

VectorField EulerState::velocity() const {
  VectorField u = perp_grad_inv_laplacian(omega);
  return {to_physical(std::move(u[0])), to_physical(std::move(u[1]))};
}

double energy(const Field& omega) {
  const Grid& g = omega.grid();
  const double area = std::pow(g.period(), g.dim());
  return 0.5 * area * weighted_sum(g, omega.coefficients(), [](double a, double b) {
           const double k2 = a * a + b * b;
           return k2 == 0.0 ? 0.0 : 1.0 / k2;
         });
}

double enstrophy(const Field& omega) {
  const Grid& g = omega.grid();
  const double area = std::pow(g.period(), g.dim());
  return 0.5 * area * weighted_sum(g, omega.coefficients(), [](double, double) { return 1.0; });
}

double biot_savart_residual(const Field& omega) {
  const VectorField u = perp_grad_inv_laplacian(omega);
  return linf_norm(combine(1.0, curl(u), -1.0, omega));
}

EulerDiagnostics diagnose(const EulerState& s, bool with_besov) {
  EulerDiagnostics d;
  d.t = s.t;
  d.energy = energy(s.omega);
  d.enstrophy = enstrophy(s.omega);
  d.sup_vorticity = linf_norm(s.omega);
  if (with_besov) d.besov = lp::besov_norm(s.omega, lp::critical_params(2));
  d.biot_savart_residual = biot_savart_residual(s.omega);
  return d;
}

Field dealiased(const Field& f) {
  const std::vector<double> mask = dealias_mask(f.grid());
  ComplexBuffer c = f.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= mask[k];
  return Field::from_coefficients(f.grid(), std::move(c));
}

EulerSolver::EulerSolver(const Grid& grid, bool forced)
    : grid_(grid), forced_(forced), mask_(dealias_mask(grid)) {
  require_2d(grid, "EulerSolver");
  symbol_ = forced ? sample_symbol(riesz_pair(2, 2), grid) : ComplexBuffer(grid.spectral_size(), {0.0, 0.0});
  xi1_.resize(grid.spectral_size());
  xi2_.resize(grid.spectral_size());
  inv_k2_.resize(grid.spectral_size());
  for_each_mode(grid, [&](std::size_t k, double a, double b, bool nyq) {
    xi1_[k] = nyq ? 0.0 : a;
    xi2_[k] = nyq ? 0.0 : b;
    const double k2 = a * a + b * b;
    inv_k2_[k] = (nyq || k2 == 0.0) ? 0.0 : 1.0 / k2;
  });
  u1_.resize(grid.size());
  u2_.resize(grid.size());
  gx_.resize(grid.size());
  gy_.resize(grid.size());
  prod_.resize(grid.size());
  work_.resize(grid.spectral_size());
}

double EulerSolver::cfl_step(const EulerState& s, double dt_max) const {
  const VectorField u = s.velocity();
  double umax = 0.0;
  const auto& a = u[0].values();
  const auto& b = u[1].values();
  for (std::size_t k = 0; k < a.size(); ++k) umax = std::max(umax, std::hypot(a[k], b[k]));
  if (umax == 0.0) return dt_max;
  return std::min(dt_max, 0.5 * grid_.spacing() / umax);
}

void EulerSolver::nonlinear(const ComplexBuffer& w, ComplexBuffer& out, RealBuffer* u1_out, RealBuffer* u2_out) {
  const FftEngine& fft = FftEngine::for_grid(grid_);
  const std::complex<double> i{0.0, 1.0};
  for (std::size_t k = 0; k < w.size(); ++k) work_[k] = i * xi2_[k] * inv_k2_[k] * w[k];
  fft.inverse(work_.data(), u1_.data());
  for (std::size_t k = 0; k < w.size(); ++k) work_[k] = -i * xi1_[k] * inv_k2_[k] * w[k];
  fft.inverse(work_.data(), u2_.data());
  for (std::size_t k = 0; k < w.size(); ++k) work_[k] = i * xi1_[k] * w[k];
  fft.inverse(work_.data(), gx_.data());
  for (std::size_t k = 0; k < w.size(); ++k) work_[k] = i * xi2_[k] * w[k];
  fft.inverse(work_.data(), gy_.data());
  for (std::size_t k = 0; k < prod_.size(); ++k) prod_[k] = u1_[k] * gx_[k] + u2_[k] * gy_[k];
  fft.forward(prod_.data(), out.data());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= -mask_[k];
  if (u1_out) *u1_out = u1_;
  if (u2_out) *u2_out = u2_;
}

void EulerSolver::step(EulerState& s, double dt) { advance(s, dt, nullptr, nullptr); }

void EulerSolver::step(EulerState& s, double dt, std::vector<double>& tracer_x, std::vector<double>& tracer_y) {
  advance(s, dt, &tracer_x, &tracer_y);
}

void EulerSolver::advance(EulerState& s, double h, std::vector<double>* tx, std::vector<double>* ty) {
  if (!(s.omega.grid() == grid_)) throw std::invalid_argument("EulerSolver: state grid differs from solver grid");
  if (!(h > 0.0)) throw std::invalid_argument("EulerSolver: dt must be positive");
  if (h != cached_dt_) {
    cached_dt_ = h;
    half_.resize(symbol_.size());
    full_.resize(symbol_.size());
    for (std::size_t k = 0; k < symbol_.size(); ++k) {
      half_[k] = std::exp(0.5 * h * symbol_[k]);
      full_[k] = half_[k] * half_[k];
    }
  }
  const std::size_t m = grid_.spectral_size();
  ComplexBuffer w = s.omega.coefficients();
  ComplexBuffer k1(m), k2(m), k3(m), k4(m), a(m);
  const bool tracking = tx != nullptr;
  RealBuffer v1, v2;
  std::array<RealBuffer, 4> sx, sy;  // stage velocities at tracer positions

  const int order = 8;
  auto sample_tracers = [&](int stage, const RealBuffer& px, const RealBuffer& py) {
    const InterpolationPlan plan(grid_, px, py, order);
    sx[stage].resize(px.size());
    sy[stage].resize(px.size());
    plan.apply(v1, sx[stage].data());
    plan.apply(v2, sy[stage].data());
  };
  RealBuffer x0, y0, px, py;
  if (tracking) {
    x0.assign(tx->begin(), tx->end());
    y0.assign(ty->begin(), ty->end());
  }
  auto stage_positions = [&](int prev, double frac) {
    px.resize(x0.size());
    py.resize(y0.size());
    for (std::size_t k = 0; k < x0.size(); ++k) {
      px[k] = x0[k] + frac * h * sx[prev][k];
      py[k] = y0[k] + frac * h * sy[prev][k];
    }
  };

  nonlinear(w, k1, tracking ? &v1 : nullptr, tracking ? &v2 : nullptr);
  double umax = 0.0;
  for (std::size_t k = 0; k < u1_.size(); ++k) umax = std::max(umax, std::hypot(u1_[k], u2_[k]));
  if (h * umax > grid_.spacing()) {
    std::ostringstream msg;
    msg << "EulerSolver: dt = " << h << " violates the CFL bound dt <= dx / |u|_inf = " << grid_.spacing() / umax;
    throw std::invalid_argument(msg.str());
  }
  if (tracking) sample_tracers(0, x0, y0);

  for (std::size_t k = 0; k < m; ++k) a[k] = half_[k] * (w[k] + 0.5 * h * k1[k]);
  nonlinear(a, k2, tracking ? &v1 : nullptr, tracking ? &v2 : nullptr);
  if (tracking) {
    stage_positions(0, 0.5);
    sample_tracers(1, px, py);
  }
  for (std::size_t k = 0; k < m; ++k) a[k] = half_[k] * w[k] + 0.5 * h * k2[k];
  nonlinear(a, k3, tracking ? &v1 : nullptr, tracking ? &v2 : nullptr);
  if (tracking) {
    stage_positions(1, 0.5);
    sample_tracers(2, px, py);
  }
  for (std::size_t k = 0; k < m; ++k) a[k] = full_[k] * w[k] + h * half_[k] * k3[k];
  nonlinear(a, k4, tracking ? &v1 : nullptr, tracking ? &v2 : nullptr);
  if (tracking) {
    stage_positions(2, 1.0);
    sample_tracers(3, px, py);
    for (std::size_t k = 0; k < x0.size(); ++k) {
      (*tx)[k] = x0[k] + h / 6.0 * (sx[0][k] + 2.0 * sx[1][k] + 2.0 * sx[2][k] + sx[3][k]);
      (*ty)[k] = y0[k] + h / 6.0 * (sy[0][k] + 2.0 * sy[1][k] + 2.0 * sy[2][k] + sy[3][k]);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    w[k] = full_[k] * w[k] + h / 6.0 * (full_[k] * k1[k] + 2.0 * half_[k] * (k2[k] + k3[k]) + k4[k]);
  }
  s.omega = Field::from_coefficients(grid_, std::move(w));
  s.t += h;
}

void step_euler2d(EulerState& s, double dt) {
  EulerSolver solver(s.omega.grid(), false);
  solver.step(s, dt);
}

void step_perturbed(EulerState& s, double dt) {
  EulerSolver solver(s.omega.grid(), true);
  solver.step(s, dt);
}

RunResult run_euler(EulerState initial, const RunOptions& options) {
  const Grid grid = initial.omega.grid();
  EulerSolver solver(grid, options.forced);
  RunResult r;
  r.final_state = std::move(initial);
  EulerState& s = r.final_state;
  const double t_end = s.t + options.t_end;
  r.history.push_back(diagnose(s, options.with_besov));
  r.max_biot_savart_residual = r.history.back().biot_savart_residual;
  double previous_enstrophy = r.history.back().enstrophy;
  while (s.t < t_end - 1e-12) {
    double dt = options.fixed_dt > 0.0 ? options.fixed_dt : solver.cfl_step(s, options.dt_max);
    dt = std::min(dt, t_end - s.t);
    solver.step(s, dt);
    ++r.steps;
    const double z = enstrophy(s.omega);
    if (z > previous_enstrophy * (1.0 + 1e-12)) r.enstrophy_monotone = false;
    previous_enstrophy = z;
    const bool last = s.t >= t_end - 1e-12;
    if (last || (options.record_every > 0 && r.steps % options.record_every == 0)) {
      r.history.push_back(diagnose(s, options.with_besov));
      r.max_biot_savart_residual = std::max(r.max_biot_savart_residual, r.history.back().biot_savart_residual);
    }
  }
  return r;
}

std::vector<TwoAndHalfDRecord> evolve_25d(TwoAndHalfDState& state, double T, double dt, int order,
                                          int record_every) {
  const Grid grid = state.u3.grid();
  require_2d(grid, "evolve_25d");
  if (!state.u_h.stationary) throw std::invalid_argument("evolve_25d: the horizontal flow must be stationary");
  const int steps = static_cast<int>(std::ceil(T / dt - 1e-9));
  const double h = steps > 0 ? T / steps : 0.0;

  // Departure points of one step: RK4 backwards along the stationary flow.
  const int n = grid.n();
  RealBuffer x(grid.size()), y(grid.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      x[k] = grid.coordinate(i);
      y[k] = grid.coordinate(j);
    }
  }
  const transport::Velocity& u = state.u_h;
  const transport::Velocity reversed{[&u](double a, double b, double t) {
                                       const transport::Vec2 v = u.at(a, b, t);
                                       return transport::Vec2{-v[0], -v[1]};
                                     },
                                     u.gradient, true, u.name + "-reversed"};
  RealBuffer dx = x, dy = y;
  if (steps > 0) transport::rk4_positions(reversed, 0.0, h, dx, dy);
  double largest = 0.0;
  for (std::size_t k = 0; k < dx.size(); ++k) {
    dx[k] -= x[k];
    dy[k] -= y[k];
    largest = std::max(largest, std::hypot(dx[k], dy[k]));
  }
  if (largest > 2.0 * grid.spacing()) {
    std::ostringstream msg;
    msg << "evolve_25d: departure displacement " << largest << " exceeds two cells (" << 2.0 * grid.spacing()
        << "); reduce dt";
    throw std::invalid_argument(msg.str());
  }
  const InterpolationPlan plan = InterpolationPlan::displaced(grid, dx, dy, order);

  RealBuffer omega_h(grid.size());
  for (std::size_t k = 0; k < omega_h.size(); ++k) {
    const transport::Mat2 g = u.gradient(x[k], y[k], 0.0);
    omega_h[k] = g[2] - g[1];
  }
  auto record = [&]() {
    TwoAndHalfDRecord r;
    r.t = state.t;
    r.sup_u3 = linf_norm(state.u3);
    const VectorField g = gradient(state.u3);
    const auto& gx = g[0].values();
    const auto& gy = g[1].values();
    for (std::size_t k = 0; k < gx.size(); ++k) {
      r.grad_u3 = std::max(r.grad_u3, std::hypot(gx[k], gy[k]));
      r.sup_omega = std::max(r.sup_omega, std::sqrt(gx[k] * gx[k] + gy[k] * gy[k] + omega_h[k] * omega_h[k]));
    }
    return r;
  };
  std::vector<TwoAndHalfDRecord> out{record()};
  for (int s = 0; s < steps; ++s) {
    state.u3 = plan.apply(state.u3);
    state.t += h;
    if ((s + 1) % std::max(1, record_every) == 0 || s + 1 == steps) out.push_back(record());
  }
  return out;
}

std::vector<HolderRecord> yudovich_regularity_probe(const Grid& grid, double T, std::span<const double> times,
                                                    int k_min, int k_max, double smoothing) {
  require_2d(grid, "yudovich_regularity_probe");
  if (k_min > k_max) throw std::invalid_argument("yudovich_regularity_probe: k_min > k_max");
  if (std::ldexp(1.0, -k_max) < 2.0 * grid.spacing()) {
    std::ostringstream msg;
    msg << "yudovich_regularity_probe: scale 2^-" << k_max << " is below two grid cells (" << 2.0 * grid.spacing()
        << ")";
    throw std::invalid_argument(msg.str());
  }
  constexpr int kDirections = 8;
  std::vector<double> tx{0.0}, ty{0.0};
  std::vector<double> log_r;
  for (int d = 0; d < kDirections; ++d) {
    const double theta = std::numbers::pi * d / kDirections;
    for (int k = k_min; k <= k_max; ++k) {
      const double r = std::ldexp(1.0, -k);
      tx.push_back(r * std::cos(theta));
      ty.push_back(r * std::sin(theta));
      if (d == 0) log_r.push_back(std::log(r));
    }
  }
  const int per_dir = k_max - k_min + 1;
  auto measure = [&](double t) {
    HolderRecord rec;
    rec.t = t;
    rec.alpha = std::numeric_limits<double>::infinity();
    for (int d = 0; d < kDirections; ++d) {
      std::vector<double> log_sep;
      for (int k = 0; k < per_dir; ++k) {
        const std::size_t idx = 1 + static_cast<std::size_t>(d) * per_dir + k;
        log_sep.push_back(std::log(std::hypot(tx[idx] - tx[0], ty[idx] - ty[0])));
      }
      const double slope = fit_linear(log_r, log_sep).slope;
      rec.direction_slopes.push_back(slope);
      rec.alpha = std::min(rec.alpha, slope);
    }
    return rec;
  };

  EulerState s{dealiased(data::yudovich_cross(grid, smoothing)), 0.0};
  EulerSolver solver(grid, false);
  std::vector<double> marks(times.begin(), times.end());
  std::sort(marks.begin(), marks.end());
  std::vector<HolderRecord> out;
  for (double mark : marks) {
    if (mark > T + 1e-12) break;
    while (s.t < mark - 1e-12) {
      const double dt = std::min(solver.cfl_step(s, 0.02), mark - s.t);
      solver.step(s, dt, tx, ty);
    }
    out.push_back(measure(mark));
  }
  return out;
}

LpGrowthResult lp_growth_probe(const data::C1Datum& datum, double T, std::span<const double> p_list,
                               std::span<const double> times) {
  LpGrowthResult res;
  const Field hessian = frobenius(data::pressure_hessian(datum.u));
  for (double p : p_list) {
    res.p.push_back(p);
    res.hessian_lp.push_back(lp_norm(hessian, p));
  }
  if (res.p.size() >= 2) {
    const LinearFit fit = fit_linear(res.p, res.hessian_lp);
    res.slope = fit.slope;
    res.intercept = fit.intercept;
    res.r_squared = fit.r_squared;
  }
  if (times.empty()) return res;

  const Grid grid = datum.u[0].grid();
  EulerState s{dealiased(curl(datum.u)), 0.0};
  EulerSolver solver(grid, false);
  auto record = [&](double t) {
    const Field g = frobenius(jacobian(s.velocity()));
    for (double p : p_list) res.series.push_back({t, p, lp_norm(g, p)});
  };
  std::vector<double> marks(times.begin(), times.end());
  std::sort(marks.begin(), marks.end());
  for (double mark : marks) {
    if (mark > T + 1e-12) break;
    while (s.t < mark - 1e-12) solver.step(s, std::min(solver.cfl_step(s, 0.01), mark - s.t));
    record(mark);
  }
  return res;
}

}  // namespace normlab::euler
