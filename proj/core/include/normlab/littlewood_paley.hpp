#pragma once

#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

#include "normlab/field.hpp"

namespace normlab::lp {

/// Radial cutoff chi: 1 on |xi| <= 1/2, 0 on |xi| >= 1, C-infinity in between.
double chi(double radius);
/// phi(xi) = chi(xi/2) - chi(xi), supported in 1/2 <= |xi| <= 2.
double phi(double radius);

/// Dyadic filters on one grid. Block q = -1 is the low-frequency piece S_0,
/// blocks q = 0..q_max are the annuli phi(2^-q xi).
class FilterBank {
 public:
  explicit FilterBank(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  /// Smallest Q with 2^Q >= the largest lattice |xi|, so the blocks up to
  /// q_max sum to one on every stored coefficient.
  int q_max() const noexcept { return q_max_; }
  double radius(std::size_t k) const { return radius_[k]; }

  /// Weight of block q on coefficient k (q = -1 is chi).
  double block_weight(int q, std::size_t k) const;
  /// chi(2^-q xi): the low-pass weight for S_q.
  double low_pass_weight(int q, std::size_t k) const;

 private:
  Grid grid_;
  int q_max_;
  std::vector<double> radius_;
};

FilterBank build_filter_bank(const Grid& grid);

/// Delta_q f; q = -1 returns S_0 f.
Field dyadic_block(const FilterBank& bank, const Field& f, int q);
/// S_q f = sum of blocks below q, including S_0.
Field low_pass(const FilterBank& bank, const Field& f, int q);

struct BesovParams {
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

double besov_norm(const FilterBank& bank, const Field& f, const BesovParams& params);
double besov_norm(const Field& f, const BesovParams& params);
/// The same norm from unweighted block norms |Delta_q f|_{L^p}, q = -1, 0, 1, ...
double besov_from_block_norms(const std::vector<double>& block_norms, const BesovParams& params);

struct BlockNorm {
  int q;
  double weighted;  // 2^{qs} |Delta_q f|_{L^p}; the S_0 term for q = -1
};

/// Per-block profile used by the Besov norm, from q = -1 to q_max.
std::vector<BlockNorm> besov_profile(const FilterBank& bank, const Field& f, const BesovParams& params);
void write_besov_profile_csv(std::ostream& out, const std::vector<BlockNorm>& profile);

/// |Delta_q f|_{L^b} / (2^{d(1/a - 1/b) q} |Delta_q f|_{L^a}); zero when the
/// block vanishes.
double bernstein_check(const FilterBank& bank, const Field& f, int q, double a, double b);
/// The same ratio for an already extracted block Delta_q f.
double bernstein_ratio(const Field& block, int q, double a, double b);

/// (|f|_{L^inf}, |f|_{B^0_{inf,1}}).
std::pair<double, double> linfty_embedding_check(const FilterBank& bank, const Field& f);

/// The two readings of the critical index for d = 2: integrability p with
/// a*p = d (B^{1/2}_{4,1}) and with a*p = 1 (B^{1/2}_{2,1}).
BesovParams critical_params(int dim);
BesovParams critical_params_unit_product();

}  // namespace normlab::lp
