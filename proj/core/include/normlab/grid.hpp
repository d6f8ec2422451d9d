#pragma once

#include <cstddef>

namespace normlab {

/// Uniform periodic grid on [-L/2, L/2)^d with n points per axis.
///
/// Physical samples are stored row-major with the first axis slowest. The
/// spectral side keeps the non-redundant half of the lattice along the last
/// axis, matching the real-to-complex FFT layout.
class Grid {
 public:
  /// Smallest valid grid: 1D, n = 8, period 2 pi.
  Grid();
  Grid(int dim, int n, double period);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  double period() const noexcept { return period_; }
  double spacing() const noexcept { return period_ / n_; }
  double cell_measure() const noexcept;

  std::size_t size() const noexcept;
  int spectral_cols() const noexcept { return n_ / 2 + 1; }
  std::size_t spectral_size() const noexcept;

  /// Lattice frequency of an FFT index in [0, n): integer times 2 pi / L.
  double wavenumber(int index) const noexcept;
  /// Signed integer mode of an FFT index.
  int mode(int index) const noexcept { return index <= n_ / 2 ? index : index - n_; }
  /// Centered coordinate of a sample index, in [-L/2, L/2).
  double coordinate(int index) const noexcept;
  /// Frequency of the Nyquist line, pi n / L.
  double nyquist() const noexcept;

  bool operator==(const Grid&) const = default;

 private:
  int dim_;
  int n_;
  double period_;
};

inline Grid grid1d(int n, double period) { return Grid(1, n, period); }
inline Grid grid2d(int n, double period) { return Grid(2, n, period); }

/// Visits every stored spectral coefficient as fn(index, xi1, xi2, on_nyquist).
/// For d = 1 the second frequency is zero.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n();
  const int cols = g.spectral_cols();
  if (g.dim() == 1) {
    for (int k = 0; k < cols; ++k) {
      fn(static_cast<std::size_t>(k), g.wavenumber(k), 0.0, k == n / 2);
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.wavenumber(i);
    const std::size_t row = static_cast<std::size_t>(i) * cols;
    for (int j = 0; j < cols; ++j) {
      fn(row + j, xi1, g.wavenumber(j), i == n / 2 || j == n / 2);
    }
  }
}

/// Multiplicity of a stored half-spectrum coefficient in the full lattice.
inline double hermitian_weight(const Grid& g, int last_index) {
  return (last_index == 0 || last_index == g.n() / 2) ? 1.0 : 2.0;
}

}  // namespace normlab
