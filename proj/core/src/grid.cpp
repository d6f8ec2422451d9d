#include "normlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace normlab {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid() : Grid(1, 8, 2.0 * std::numbers::pi) {}

Grid::Grid(int dim, int n, double period) : dim_(dim), n_(n), period_(period) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  if (n < 8 || !is_power_of_two(n)) {
    throw std::invalid_argument("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("grid period must be positive");
}

double Grid::cell_measure() const noexcept {
  const double h = spacing();
  return dim_ == 1 ? h : h * h;
}

std::size_t Grid::size() const noexcept {
  const auto n = static_cast<std::size_t>(n_);
  return dim_ == 1 ? n : n * n;
}

std::size_t Grid::spectral_size() const noexcept {
  const auto cols = static_cast<std::size_t>(spectral_cols());
  return dim_ == 1 ? cols : static_cast<std::size_t>(n_) * cols;
}

double Grid::wavenumber(int index) const noexcept {
  return 2.0 * std::numbers::pi / period_ * mode(index);
}

double Grid::coordinate(int index) const noexcept {
  return (index < n_ / 2 ? index : index - n_) * spacing();
}

double Grid::nyquist() const noexcept { return std::numbers::pi * n_ / period_; }

}  // namespace normlab
