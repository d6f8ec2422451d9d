#pragma once

#include <array>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "normlab/fft.hpp"
#include "normlab/grid.hpp"

namespace normlab {

enum class Representation { physical, spectral, both };

/// Real scalar field on a periodic grid with paired physical samples and
/// lattice coefficients. At least one representation is always current; the
/// other is computed on first access. A field must not be read for the first
/// time from two threads at once.
class Field {
 public:
  Field() : Field(Grid()) {}
  explicit Field(Grid grid);

  static Field from_values(Grid grid, RealBuffer values);
  static Field from_coefficients(Grid grid, ComplexBuffer coeffs);

  /// Samples fn(x) (d = 1) or fn(x, y) (d = 2) at centered coordinates.
  template <class Fn>
  static Field sample(const Grid& grid, Fn&& fn);

  const Grid& grid() const noexcept { return grid_; }
  Representation representation() const noexcept;
  bool has_values() const noexcept { return physical_valid_; }
  bool has_coefficients() const noexcept { return spectral_valid_; }

  const RealBuffer& values() const;
  const ComplexBuffer& coefficients() const;

  /// Mutable access; the other representation becomes stale.
  RealBuffer& edit_values();
  ComplexBuffer& edit_coefficients();

  /// Makes both representations current. Throws std::domain_error when a
  /// physical sample is not finite.
  Field& synchronize();

  double value(int i, int j = 0) const;

 private:
  void refresh() const;

  Grid grid_;
  mutable RealBuffer values_;
  mutable ComplexBuffer coeffs_;
  mutable bool physical_valid_ = true;
  mutable bool spectral_valid_ = true;
};

Field to_spectral(Field f);
Field to_physical(Field f);

using VectorField = std::array<Field, 2>;

/// Pointwise linear combination a*f + b*g, computed in whichever
/// representation both fields share (physical preferred).
Field combine(double a, const Field& f, double b, const Field& g);
Field scaled(const Field& f, double a);

template <class Fn>
Field Field::sample(const Grid& grid, Fn&& fn) {
  RealBuffer v(grid.size());
  const int n = grid.n();
  if constexpr (std::is_invocable_v<Fn, double>) {
    if (grid.dim() != 1) throw std::invalid_argument("Field::sample: one-argument function on a 2D grid");
    for (int i = 0; i < n; ++i) v[i] = fn(grid.coordinate(i));
  } else {
    if (grid.dim() != 2) throw std::invalid_argument("Field::sample: two-argument function on a 1D grid");
    for (int i = 0; i < n; ++i) {
      const double x = grid.coordinate(i);
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] = fn(x, grid.coordinate(j));
    }
  }
  return from_values(grid, std::move(v));
}

}  // namespace normlab
