#include "normlab/transport.hpp"

#include <gsl/gsl_randist.h>
#include <gsl/gsl_rng.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "normlab/interpolation.hpp"
#include "normlab/norms.hpp"

namespace normlab::transport {

Field commutator_apply(const Multiplier& R, const FlowMap& phi, const Field& w, int order) {
  const double limit = 0.5 * phi.grid.period();
  if (phi.max_displacement() > limit) {
    std::ostringstream msg;
    msg << "commutator_apply: flow-map displacement " << phi.max_displacement() << " exceeds half the period "
        << limit;
    throw std::invalid_argument(msg.str());
  }
  if (!(w.grid() == phi.grid)) throw std::invalid_argument("commutator_apply: field and flow map grids differ");
  const InterpolationPlan plan = InterpolationPlan::displaced(phi.grid, phi.forward_x, phi.forward_y, order);
  const Field rw = apply_multiplier(R, w);
  return combine(1.0, apply_multiplier(R, plan.apply(w)), -1.0, plan.apply(rw));
}

std::vector<Field> random_suite(const Grid& grid, std::size_t count, int max_mode, std::uint64_t seed) {
  std::unique_ptr<gsl_rng, decltype(&gsl_rng_free)> rng(gsl_rng_alloc(gsl_rng_mt19937), &gsl_rng_free);
  gsl_rng_set(rng.get(), static_cast<unsigned long>(seed));
  std::vector<Field> suite;
  suite.reserve(count);
  const int n = grid.n();
  for (std::size_t s = 0; s < count; ++s) {
    ComplexBuffer c(grid.spectral_size(), {0.0, 0.0});
    for_each_mode(grid, [&](std::size_t k, double, double, bool nyq) {
      if (nyq) return;
      const int cols = grid.spectral_cols();
      const int i = grid.dim() == 1 ? 0 : static_cast<int>(k / cols);
      const int j = static_cast<int>(k % cols);
      const int m1 = grid.dim() == 1 ? grid.mode(j) : grid.mode(i);
      const int m2 = grid.dim() == 1 ? 0 : j;
      if (m1 == 0 && m2 == 0) return;
      if (std::abs(m1) > max_mode || m2 > max_mode) return;
      const double a = gsl_ran_gaussian(rng.get(), 1.0);
      const double b = gsl_ran_gaussian(rng.get(), 1.0);
      c[k] = {a, b};
      // Hermitian symmetry on the j = 0 column.
      if (m2 == 0 && m1 < 0) c[k] = {0.0, 0.0};
    });
    if (grid.dim() == 2) {
      const int cols = grid.spectral_cols();
      for (int i = 1; i < n / 2; ++i) {
        c[static_cast<std::size_t>(n - i) * cols] = std::conj(c[static_cast<std::size_t>(i) * cols]);
      }
    }
    Field f = Field::from_coefficients(grid, std::move(c));
    const double sup = linf_norm(f);
    suite.push_back(scaled(f, 1.0 / sup));
  }
  return suite;
}

namespace {

struct ScanPoint {
  double t;
  FlowMap phi;
};

ScanPoint flow_with_M(const Velocity& u, const Grid& grid, double target, double lip) {
  auto run = [&](double t) {
    const double dt = std::max(t / 16.0, 1e-6);
    return integrate_flow(u, grid, t, std::min(dt, 0.5 / std::max(lip, 1e-12)));
  };
  double t0 = target / lip;
  FlowMap p0 = run(t0);
  if (std::abs(p0.M() - target) <= 1e-3 * target) return {t0, std::move(p0)};
  double t1 = t0 * target / p0.M();
  FlowMap p1 = run(t1);
  for (int it = 0; it < 20 && std::abs(p1.M() - target) > 1e-3 * target; ++it) {
    const double slope = (p1.M() - p0.M()) / (t1 - t0);
    const double t2 = slope > 0.0 ? t1 + (target - p1.M()) / slope : t1 * target / p1.M();
    t0 = t1;
    p0 = std::move(p1);
    t1 = t2;
    p1 = run(t1);
  }
  return {t1, std::move(p1)};
}

}  // namespace

std::vector<CommutatorRow> commutator_scaling_scan(const Velocity& u, const Grid& grid,
                                                   std::span<const double> targets,
                                                   std::span<const Field> suite, const Multiplier& R,
                                                   std::span<const double> lp_exponents, int order) {
  for (double m : targets) {
    if (!(m >= 0.0) || m > 0.2) {
      throw std::invalid_argument("commutator_scaling_scan: M targets must lie in [0, 0.2]");
    }
  }
  const lp::FilterBank bank(grid);
  const lp::BesovParams params = lp::critical_params(grid.dim());
  std::vector<double> besov_in;
  std::vector<std::vector<double>> lp_in;
  for (const Field& w : suite) {
    besov_in.push_back(lp::besov_norm(bank, w, params));
    std::vector<double> row;
    for (double p : lp_exponents) row.push_back(lp_norm(w, p));
    lp_in.push_back(std::move(row));
  }
  const double lip = velocity_lipschitz(u, grid, 0.0);
  std::vector<CommutatorRow> rows;
  for (double target : targets) {
    CommutatorRow row;
    row.target_M = target;
    for (double p : lp_exponents) row.lp_ratio[p] = 0.0;
    if (target == 0.0 || lip == 0.0) {
      rows.push_back(row);
      continue;
    }
    const ScanPoint point = flow_with_M(u, grid, target, lip);
    row.t = point.t;
    row.M = point.phi.M();
    for (std::size_t s = 0; s < suite.size(); ++s) {
      const Field c = commutator_apply(R, point.phi, suite[s], order);
      row.besov_ratio = std::max(row.besov_ratio, lp::besov_norm(bank, c, params) / besov_in[s]);
      for (std::size_t e = 0; e < lp_exponents.size(); ++e) {
        double& r = row.lp_ratio[lp_exponents[e]];
        r = std::max(r, lp_norm(c, lp_exponents[e]) / lp_in[s][e]);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

/// Integrating-factor RK4 (Lawson form) for f_t = R f - u . grad f on the
/// coefficient side.
class ForcedStepper {
 public:
  ForcedStepper(const Grid& grid, const Velocity& u, const Multiplier& R, bool dealias)
      : grid_(grid), engine_(FftEngine::for_grid(grid)), u_(u), symbol_(sample_symbol(R, grid)),
        mask_(grid.spectral_size(), 1.0) {
    if (dealias) {
      const double cut = grid.n() / 3.0;
      const int cols = grid.spectral_cols();
      for (std::size_t k = 0; k < mask_.size(); ++k) {
        const int j = static_cast<int>(k % cols);
        const int i = grid.dim() == 1 ? 0 : static_cast<int>(k / cols);
        if (std::abs(grid.mode(j)) > cut || (grid.dim() == 2 && std::abs(grid.mode(i)) > cut)) mask_[k] = 0.0;
      }
    }
    xi1_.resize(grid.spectral_size());
    xi2_.resize(grid.spectral_size());
    for_each_mode(grid, [&](std::size_t k, double a, double b, bool nyq) {
      xi1_[k] = nyq ? 0.0 : a;
      xi2_[k] = nyq ? 0.0 : b;
    });
    grad_.resize(grid.size());
    prod_.resize(grid.size());
    work_.resize(grid.spectral_size());
    if (u.stationary) sample_velocity_at(0.0, cached_u1_, cached_u2_);
  }

  void set_step(double h) {
    if (h == step_) return;
    step_ = h;
    half_.resize(symbol_.size());
    full_.resize(symbol_.size());
    for (std::size_t k = 0; k < symbol_.size(); ++k) {
      half_[k] = std::exp(0.5 * h * symbol_[k]);
      full_[k] = half_[k] * half_[k];
      if (!std::isfinite(std::abs(full_[k]))) throw std::overflow_error("forced transport: exp(R dt) overflows");
    }
  }

  void step(ComplexBuffer& f, double time, double h) {
    set_step(h);
    const std::size_t m = f.size();
    ComplexBuffer k1(m), k2(m), k3(m), k4(m), a(m);
    nonlinear(f, time, k1);
    for (std::size_t k = 0; k < m; ++k) a[k] = half_[k] * (f[k] + 0.5 * h * k1[k]);
    nonlinear(a, time + 0.5 * h, k2);
    for (std::size_t k = 0; k < m; ++k) a[k] = half_[k] * f[k] + 0.5 * h * k2[k];
    nonlinear(a, time + 0.5 * h, k3);
    for (std::size_t k = 0; k < m; ++k) a[k] = full_[k] * f[k] + h * half_[k] * k3[k];
    nonlinear(a, time + h, k4);
    for (std::size_t k = 0; k < m; ++k) {
      f[k] = full_[k] * f[k] + h / 6.0 * (full_[k] * k1[k] + 2.0 * half_[k] * (k2[k] + k3[k]) + k4[k]);
    }
  }

  bool trivial_velocity() const { return u_.name == "zero"; }

 private:
  void sample_velocity_at(double time, RealBuffer& u1, RealBuffer& u2) const {
    const int n = grid_.n();
    u1.assign(grid_.size(), 0.0);
    u2.assign(grid_.dim() == 2 ? grid_.size() : 0, 0.0);
    if (grid_.dim() == 1) {
      for (int i = 0; i < n; ++i) u1[i] = u_.at(grid_.coordinate(i), 0.0, time)[0];
      return;
    }
    for (int i = 0; i < n; ++i) {
      const double x = grid_.coordinate(i);
      for (int j = 0; j < n; ++j) {
        const Vec2 v = u_.at(x, grid_.coordinate(j), time);
        const std::size_t k = static_cast<std::size_t>(i) * n + j;
        u1[k] = v[0];
        u2[k] = v[1];
      }
    }
  }

  void nonlinear(const ComplexBuffer& f, double time, ComplexBuffer& out) {
    if (trivial_velocity()) {
      std::fill(out.begin(), out.end(), std::complex<double>{0.0, 0.0});
      return;
    }
    const RealBuffer* u1 = &cached_u1_;
    const RealBuffer* u2 = &cached_u2_;
    if (!u_.stationary) {
      sample_velocity_at(time, moving_u1_, moving_u2_);
      u1 = &moving_u1_;
      u2 = &moving_u2_;
    }
    const std::complex<double> i{0.0, 1.0};
    for (std::size_t k = 0; k < f.size(); ++k) work_[k] = i * xi1_[k] * f[k];
    engine_.inverse(work_.data(), grad_.data());
    for (std::size_t k = 0; k < grad_.size(); ++k) prod_[k] = (*u1)[k] * grad_[k];
    if (grid_.dim() == 2) {
      for (std::size_t k = 0; k < f.size(); ++k) work_[k] = i * xi2_[k] * f[k];
      engine_.inverse(work_.data(), grad_.data());
      for (std::size_t k = 0; k < grad_.size(); ++k) prod_[k] += (*u2)[k] * grad_[k];
    }
    engine_.forward(prod_.data(), out.data());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] *= -mask_[k];
  }

  Grid grid_;
  const FftEngine& engine_;
  const Velocity& u_;
  ComplexBuffer symbol_;
  std::vector<double> mask_;
  std::vector<double> xi1_, xi2_;
  RealBuffer cached_u1_, cached_u2_, moving_u1_, moving_u2_;
  RealBuffer grad_, prod_;
  ComplexBuffer work_;
  double step_ = -1.0;
  ComplexBuffer half_, full_;
};

double sup_of(const Grid& grid, const ComplexBuffer& c) {
  RealBuffer v(grid.size());
  FftEngine::for_grid(grid).inverse(c.data(), v.data());
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double dealias_leakage(const Field& f) {
  const Grid& g = f.grid();
  const auto& c = f.coefficients();
  const double cut = g.n() / 3.0;
  const int cols = g.spectral_cols();
  double m = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int j = static_cast<int>(k % cols);
    const int i = g.dim() == 1 ? 0 : static_cast<int>(k / cols);
    if (std::abs(g.mode(j)) > cut || (g.dim() == 2 && std::abs(g.mode(i)) > cut)) m = std::max(m, std::abs(c[k]));
  }
  return m;
}

Trajectory solve_forced_transport(const Field& f0, const Velocity& u, const Multiplier& R, double T,
                                  const TransportOptions& options, std::span<const double> snapshot_times) {
  if (!(T >= 0.0) || !(options.dt > 0.0)) throw std::invalid_argument("solve_forced_transport needs T >= 0, dt > 0");
  const Grid& grid = f0.grid();
  if (options.dealias && dealias_leakage(f0) > 1e-12 * std::max(1.0, linf_norm(f0))) {
    throw std::invalid_argument("solve_forced_transport: f0 has content outside the 2/3 dealiasing box");
  }
  std::vector<double> marks{0.0};
  for (double s : snapshot_times) {
    if (s < 0.0 || s > T) throw std::invalid_argument("solve_forced_transport: snapshot time outside [0, T]");
    marks.push_back(s);
  }
  marks.push_back(T);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  ForcedStepper stepper(grid, u, R, options.dealias);
  ComplexBuffer c = f0.coefficients();
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(f0);
  double time = 0.0;
  for (std::size_t m = 1; m < marks.size(); ++m) {
    const double span = marks[m] - marks[m - 1];
    const int steps = std::max(1, static_cast<int>(std::ceil(span / options.dt - 1e-9)));
    const double h = span / steps;
    for (int s = 0; s < steps; ++s) {
      stepper.step(c, time, h);
      time = marks[m - 1] + (s + 1) * h;
      if ((s + 1) % 16 == 0 || s + 1 == steps) {
        const double sup = sup_of(grid, c);
        if (!(sup <= options.blowup)) {
          std::ostringstream msg;
          msg << "solve_forced_transport: |f|_inf = " << sup << " exceeds " << options.blowup << " at t = " << time
              << " (dt = " << h << ", R = " << R.name << ", u = " << u.name << ")";
          throw std::runtime_error(msg.str());
        }
      }
    }
    time = marks[m];
    traj.times.push_back(time);
    traj.states.push_back(Field::from_coefficients(grid, c));
  }
  return traj;
}

DuhamelResult duhamel_residual(const Field& f0, const Velocity& u, const Multiplier& R, double t, double dt,
                               int order) {
  const Grid& grid = f0.grid();
  if (grid.dim() != 2) throw std::invalid_argument("duhamel_residual needs a 2D grid");
  int steps = t == 0.0 ? 0 : static_cast<int>(std::ceil(t / dt - 1e-9));
  if (steps % 2 != 0) ++steps;
  const double h = steps > 0 ? t / steps : 0.0;
  const ComplexBuffer symbol = sample_symbol(R, grid);
  const int n = grid.n();

  RealBuffer px(grid.size()), py(grid.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      px[k] = grid.coordinate(i);
      py[k] = grid.coordinate(j);
    }
  }

  ForcedStepper stepper(grid, u, R, true);
  ComplexBuffer c = f0.coefficients();
  ComplexBuffer integral(grid.spectral_size(), {0.0, 0.0});
  auto accumulate = [&](int node) {
    const double s = node * h;
    double w = (node == 0 || node == steps) ? 1.0 : (node % 2 == 1 ? 4.0 : 2.0);
    w *= h / 3.0;
    const Field f = Field::from_coefficients(grid, c);
    const InterpolationPlan plan(grid, px, py, order);
    const Field comm = combine(1.0, apply_multiplier(R, plan.apply(f)), -1.0, plan.apply(apply_multiplier(R, f)));
    const auto& hc = comm.coefficients();
    for (std::size_t k = 0; k < hc.size(); ++k) integral[k] += w * std::exp((t - s) * symbol[k]) * hc[k];
  };
  if (steps > 0) accumulate(0);
  for (int s = 0; s < steps; ++s) {
    stepper.step(c, s * h, h);
    rk4_positions(u, s * h, h, px, py);
    accumulate(s + 1);
  }

  const Field ft = Field::from_coefficients(grid, c);
  const Field lhs = InterpolationPlan(grid, px, py, order).apply(ft);
  ComplexBuffer rhs(grid.spectral_size());
  const auto& c0 = f0.coefficients();
  for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = std::exp(t * symbol[k]) * c0[k] - integral[k];
  const Field right = Field::from_coefficients(grid, std::move(rhs));
  DuhamelResult r;
  r.t = t;
  r.dt = h;
  r.steps = steps;
  r.order = order;
  r.residual = linf_norm(combine(1.0, lhs, -1.0, right));
  r.scale = linf_norm(lhs);
  return r;
}

LowerBoundRecord lower_bound_check(const Field& f0, const Velocity& u, const Multiplier& R, double t, double dt,
                                   double constant) {
  const Grid& grid = f0.grid();
  LowerBoundRecord rec;
  rec.t = t;
  rec.constant = constant;
  TransportOptions opts;
  opts.dt = dt;
  const Trajectory traj = solve_forced_transport(f0, u, R, t, opts);
  rec.sup_solution = linf_norm(traj.states.back());
  rec.sup_linear = linf_norm(combine(t, apply_multiplier(R, f0), 1.0, f0));
  rec.besov_initial = lp::besov_norm(f0, lp::critical_params(grid.dim()));
  if (grid.dim() == 2) {
    rec.lipschitz = velocity_lipschitz(u, grid, 0.0);
  } else {
    double m = 0.0;
    for (int i = 0; i < grid.n(); ++i) m = std::max(m, std::abs(u.gradient(grid.coordinate(i), 0.0, 0.0)[0]));
    rec.lipschitz = m;
  }
  rec.correction = t * t * (1.0 + rec.lipschitz * std::exp(constant * t * rec.lipschitz)) * rec.besov_initial;
  rec.holds = rec.sup_solution >= rec.sup_linear - constant * rec.correction;
  return rec;
}

double besov_growth_exponent(const Field& f0, const Field& ft, double t, double lipschitz) {
  const lp::BesovParams params = lp::critical_params(f0.grid().dim());
  const double b0 = lp::besov_norm(f0, params);
  const double bt = lp::besov_norm(ft, params);
  if (!(t > 0.0) || !(lipschitz > 0.0)) throw std::invalid_argument("besov_growth_exponent needs t, Lip > 0");
  return std::log(bt / b0) / (t * lipschitz);
}

}  // namespace normlab::transport
