#include "normlab/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace normlab {

Field::Field(Grid grid) : grid_(grid), values_(grid.size(), 0.0), coeffs_(grid.spectral_size()) {}

Field Field::from_values(Grid grid, RealBuffer values) {
  if (values.size() != grid.size()) throw std::invalid_argument("sample count does not match grid");
  Field f(grid);
  f.values_ = std::move(values);
  f.spectral_valid_ = false;
  return f;
}

Field Field::from_coefficients(Grid grid, ComplexBuffer coeffs) {
  if (coeffs.size() != grid.spectral_size()) throw std::invalid_argument("coefficient count does not match grid");
  Field f(grid);
  f.coeffs_ = std::move(coeffs);
  f.physical_valid_ = false;
  return f;
}

Representation Field::representation() const noexcept {
  if (physical_valid_ && spectral_valid_) return Representation::both;
  return physical_valid_ ? Representation::physical : Representation::spectral;
}

const RealBuffer& Field::values() const {
  if (!physical_valid_) refresh();
  return values_;
}

const ComplexBuffer& Field::coefficients() const {
  if (!spectral_valid_) refresh();
  return coeffs_;
}

RealBuffer& Field::edit_values() {
  if (!physical_valid_) synchronize();
  spectral_valid_ = false;
  return values_;
}

ComplexBuffer& Field::edit_coefficients() {
  if (!spectral_valid_) synchronize();
  physical_valid_ = false;
  return coeffs_;
}

Field& Field::synchronize() {
  refresh();
  return *this;
}

void Field::refresh() const {
  const FftEngine& fft = FftEngine::for_grid(grid_);
  if (physical_valid_ && !spectral_valid_) {
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!std::isfinite(values_[k])) {
        throw std::domain_error("non-finite sample at flat index " + std::to_string(k));
      }
    }
    fft.forward(values_.data(), coeffs_.data());
    spectral_valid_ = true;
  } else if (spectral_valid_ && !physical_valid_) {
    fft.inverse(coeffs_.data(), values_.data());
    physical_valid_ = true;
  }
}

double Field::value(int i, int j) const {
  const auto& v = values();
  return grid_.dim() == 1 ? v[static_cast<std::size_t>(i)]
                          : v[static_cast<std::size_t>(i) * grid_.n() + static_cast<std::size_t>(j)];
}

Field to_spectral(Field f) { return std::move(f.synchronize()); }
Field to_physical(Field f) { return std::move(f.synchronize()); }

Field combine(double a, const Field& f, double b, const Field& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("combine: grid mismatch");
  if (f.has_values() && g.has_values()) {
    RealBuffer out(f.grid().size());
    const auto& x = f.values();
    const auto& y = g.values();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a * x[k] + b * y[k];
    return Field::from_values(f.grid(), std::move(out));
  }
  const Field fs = f.has_coefficients() ? f : to_spectral(f);
  const Field gs = g.has_coefficients() ? g : to_spectral(g);
  ComplexBuffer out(f.grid().spectral_size());
  const auto& x = fs.coefficients();
  const auto& y = gs.coefficients();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a * x[k] + b * y[k];
  return Field::from_coefficients(f.grid(), std::move(out));
}

Field scaled(const Field& f, double a) { return combine(a, f, 0.0, f); }

}  // namespace normlab
