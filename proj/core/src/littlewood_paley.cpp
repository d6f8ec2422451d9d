#include "normlab/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "normlab/multiplier.hpp"
#include "normlab/norms.hpp"

namespace normlab::lp {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// 1 for t <= 0, 0 for t >= 1.
double smooth_step_down(double t) {
  const double a = bump(1.0 - t);
  const double b = bump(t);
  return a / (a + b);
}

}  // namespace

double chi(double radius) {
  if (radius <= 0.5) return 1.0;
  if (radius >= 1.0) return 0.0;
  return smooth_step_down(2.0 * radius - 1.0);
}

double phi(double radius) { return chi(radius / 2.0) - chi(radius); }

FilterBank::FilterBank(const Grid& grid) : grid_(grid), radius_(grid.spectral_size()) {
  double largest = 0.0;
  for_each_mode(grid, [&](std::size_t k, double xi1, double xi2, bool) {
    radius_[k] = std::hypot(xi1, xi2);
    largest = std::max(largest, radius_[k]);
  });
  if (largest < 1.0) {
    throw std::invalid_argument("grid too coarse for the q = 0 block: largest lattice frequency " +
                                std::to_string(largest) + " < 1");
  }
  q_max_ = static_cast<int>(std::ceil(std::log2(largest)));
}

double FilterBank::block_weight(int q, std::size_t k) const {
  if (q < -1 || q > q_max_) throw std::out_of_range("dyadic block index " + std::to_string(q) + " out of range");
  const double r = radius_[k];
  return q == -1 ? chi(r) : phi(std::ldexp(r, -q));
}

double FilterBank::low_pass_weight(int q, std::size_t k) const { return chi(std::ldexp(radius_[k], -q)); }

FilterBank build_filter_bank(const Grid& grid) { return FilterBank(grid); }

namespace {

Field filtered(const FilterBank& bank, const Field& f, auto&& weight) {
  if (!(bank.grid() == f.grid())) throw std::invalid_argument("filter bank built for a different grid");
  const Field s = f.has_coefficients() ? f : to_spectral(f);
  const auto& c = s.coefficients();
  ComplexBuffer out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = weight(k) * c[k];
  return Field::from_coefficients(f.grid(), std::move(out));
}

}  // namespace

Field dyadic_block(const FilterBank& bank, const Field& f, int q) {
  if (q < -1 || q > bank.q_max()) {
    throw std::out_of_range("dyadic block " + std::to_string(q) + " beyond q_max = " + std::to_string(bank.q_max()));
  }
  return filtered(bank, f, [&](std::size_t k) { return bank.block_weight(q, k); });
}

Field low_pass(const FilterBank& bank, const Field& f, int q) {
  if (q < 0 || q > bank.q_max() + 1) throw std::out_of_range("low_pass index " + std::to_string(q) + " out of range");
  return filtered(bank, f, [&](std::size_t k) { return bank.low_pass_weight(q, k); });
}

namespace {

void check_params(const BesovParams& params) {
  if (!(params.p >= 1.0) || !(params.r >= 1.0)) throw std::invalid_argument("Besov indices p and r must be >= 1");
}

double lr_sum(const std::vector<double>& terms, double r) {
  if (std::isinf(r)) return terms.empty() ? 0.0 : *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::pow(t, r);
  return std::pow(sum, 1.0 / r);
}

}  // namespace

std::vector<BlockNorm> besov_profile(const FilterBank& bank, const Field& f, const BesovParams& params) {
  check_params(params);
  std::vector<BlockNorm> out;
  out.reserve(static_cast<std::size_t>(bank.q_max()) + 2);
  for (int q = -1; q <= bank.q_max(); ++q) {
    const double block = lp_norm(dyadic_block(bank, f, q), params.p);
    out.push_back({q, q == -1 ? block : std::pow(2.0, q * params.s) * block});
  }
  return out;
}

double besov_norm(const FilterBank& bank, const Field& f, const BesovParams& params) {
  check_params(params);
  std::vector<double> block_norms;
  for (int q = -1; q <= bank.q_max(); ++q) block_norms.push_back(lp_norm(dyadic_block(bank, f, q), params.p));
  return besov_from_block_norms(block_norms, params);
}

double besov_from_block_norms(const std::vector<double>& block_norms, const BesovParams& params) {
  check_params(params);
  if (block_norms.empty()) return 0.0;
  std::vector<double> terms;
  terms.reserve(block_norms.size());
  for (std::size_t i = 1; i < block_norms.size(); ++i) {
    terms.push_back(std::pow(2.0, static_cast<double>(i - 1) * params.s) * block_norms[i]);
  }
  return block_norms.front() + lr_sum(terms, params.r);
}

double besov_norm(const Field& f, const BesovParams& params) { return besov_norm(FilterBank(f.grid()), f, params); }

void write_besov_profile_csv(std::ostream& out, const std::vector<BlockNorm>& profile) {
  out << "q,weighted_block_norm\n" << std::setprecision(17);
  for (const auto& b : profile) out << b.q << ',' << b.weighted << '\n';
}

double bernstein_check(const FilterBank& bank, const Field& f, int q, double a, double b) {
  if (!(a >= 1.0) || !(b >= a)) throw std::invalid_argument("bernstein_check needs b >= a >= 1");
  return bernstein_ratio(to_physical(dyadic_block(bank, f, q)), q, a, b);
}

double bernstein_ratio(const Field& block, int q, double a, double b) {
  if (!(a >= 1.0) || !(b >= a)) throw std::invalid_argument("bernstein_ratio needs b >= a >= 1");
  const double low = lp_norm(block, a);
  if (low == 0.0) return 0.0;
  const double inv_b = std::isinf(b) ? 0.0 : 1.0 / b;
  const double gain = std::pow(2.0, block.grid().dim() * (1.0 / a - inv_b) * q);
  return lp_norm(block, b) / (gain * low);
}

std::pair<double, double> linfty_embedding_check(const FilterBank& bank, const Field& f) {
  return {linf_norm(f), besov_norm(bank, f, {0.0, kInfinity, 1.0})};
}

BesovParams critical_params(int dim) { return {0.5, 2.0 * dim, 1.0}; }
BesovParams critical_params_unit_product() { return {0.5, 2.0, 1.0}; }

}  // namespace normlab::lp
