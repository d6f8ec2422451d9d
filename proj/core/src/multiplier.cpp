#include "normlab/multiplier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace normlab {

ComplexBuffer sample_symbol(const Multiplier& m, const Grid& g) {
  ComplexBuffer out(g.spectral_size());
  for_each_mode(g, [&](std::size_t k, double xi1, double xi2, bool nyquist) {
    if (nyquist) {
      out[k] = 0.0;
      return;
    }
    if (k == 0) {
      switch (m.zero_mode) {
        case ZeroModePolicy::zero: out[k] = 0.0; return;
        case ZeroModePolicy::identity: out[k] = 1.0; return;
        case ZeroModePolicy::error: break;
      }
    }
    const std::complex<double> s = m.symbol(xi1, xi2);
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      std::ostringstream msg;
      msg << "symbol of " << (m.name.empty() ? "multiplier" : m.name) << " is not finite at xi = (" << xi1
          << ", " << xi2 << ")";
      throw std::domain_error(msg.str());
    }
    out[k] = s;
  });
  return out;
}

Field apply_sampled(const ComplexBuffer& symbol, const Field& f) {
  const Field fs = f.has_coefficients() ? f : to_spectral(f);
  const auto& c = fs.coefficients();
  if (symbol.size() != c.size()) throw std::invalid_argument("symbol size does not match field");
  ComplexBuffer out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = symbol[k] * c[k];
  return Field::from_coefficients(f.grid(), std::move(out));
}

Field apply_multiplier(const Multiplier& m, const Field& f) { return apply_sampled(sample_symbol(m, f.grid()), f); }

Multiplier identity_multiplier() {
  return {[](double, double) { return std::complex<double>(1.0); }, ZeroModePolicy::identity, "I"};
}

Multiplier hilbert() {
  return {[](double xi1, double) {
            return std::complex<double>(0.0, xi1 > 0.0 ? -1.0 : (xi1 < 0.0 ? 1.0 : 0.0));
          },
          ZeroModePolicy::zero, "H"};
}

namespace {
void check_axis(int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
}
double component(double xi1, double xi2, int axis) { return axis == 1 ? xi1 : xi2; }
}  // namespace

Multiplier riesz(int axis) {
  check_axis(axis);
  return {[axis](double xi1, double xi2) {
            return std::complex<double>(0.0, -component(xi1, xi2, axis) / std::hypot(xi1, xi2));
          },
          ZeroModePolicy::zero, "R" + std::to_string(axis)};
}

Multiplier riesz_pair(int i, int j) {
  check_axis(i);
  check_axis(j);
  return {[i, j](double xi1, double xi2) {
            return std::complex<double>(-component(xi1, xi2, i) * component(xi1, xi2, j) / (xi1 * xi1 + xi2 * xi2));
          },
          ZeroModePolicy::zero, "R" + std::to_string(i) + "R" + std::to_string(j)};
}

Multiplier inverse_laplacian() {
  return {[](double xi1, double xi2) { return std::complex<double>(1.0 / (xi1 * xi1 + xi2 * xi2)); },
          ZeroModePolicy::zero, "(-Lap)^-1"};
}

Multiplier derivative(int axis) {
  check_axis(axis);
  return {[axis](double xi1, double xi2) { return std::complex<double>(0.0, component(xi1, xi2, axis)); },
          ZeroModePolicy::zero, "d" + std::to_string(axis)};
}

namespace {

// Value a multiplier takes at the zero mode, as a symbol that can be wrapped.
std::function<std::complex<double>(double, double)> with_zero_value(const Multiplier& m) {
  auto s = m.symbol;
  switch (m.zero_mode) {
    case ZeroModePolicy::zero:
      return [s](double xi1, double xi2) {
        return (xi1 == 0.0 && xi2 == 0.0) ? std::complex<double>(0.0) : s(xi1, xi2);
      };
    case ZeroModePolicy::identity:
      return [s](double xi1, double xi2) {
        return (xi1 == 0.0 && xi2 == 0.0) ? std::complex<double>(1.0) : s(xi1, xi2);
      };
    case ZeroModePolicy::error: break;
  }
  return s;
}

}  // namespace

Multiplier exp_of_multiplier(const Multiplier& m, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("exp_of_multiplier: time must be finite");
  auto symbol = with_zero_value(m);
  auto name = "exp(" + std::to_string(t) + "*" + m.name + ")";
  const ZeroModePolicy zero = m.zero_mode == ZeroModePolicy::zero ? ZeroModePolicy::identity : ZeroModePolicy::error;
  return {[symbol, t, name](double xi1, double xi2) {
            const std::complex<double> e = std::exp(t * symbol(xi1, xi2));
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
              throw std::overflow_error(name + " overflows");
            }
            return e;
          },
          zero, name};
}

Multiplier compose(const Multiplier& outer, const Multiplier& inner) {
  auto a = with_zero_value(outer);
  auto b = with_zero_value(inner);
  ZeroModePolicy zero = ZeroModePolicy::error;
  if (outer.zero_mode == ZeroModePolicy::zero || inner.zero_mode == ZeroModePolicy::zero) {
    zero = ZeroModePolicy::zero;
  } else if (outer.zero_mode == ZeroModePolicy::identity && inner.zero_mode == ZeroModePolicy::identity) {
    zero = ZeroModePolicy::identity;
  }
  return {[a, b](double xi1, double xi2) { return a(xi1, xi2) * b(xi1, xi2); }, zero, outer.name + inner.name};
}

Multiplier scale(const Multiplier& m, double factor) {
  auto s = with_zero_value(m);
  const ZeroModePolicy zero = m.zero_mode == ZeroModePolicy::zero ? ZeroModePolicy::zero : ZeroModePolicy::error;
  return {[s, factor](double xi1, double xi2) { return factor * s(xi1, xi2); }, zero,
          std::to_string(factor) + m.name};
}

}  // namespace normlab
