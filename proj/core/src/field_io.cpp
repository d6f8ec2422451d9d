#include "normlab/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace normlab {

namespace {

constexpr std::array<char, 8> kMagic{'N', 'L', 'F', 'I', 'E', 'L', 'D', '1'};

template <class T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), bytes.size())) throw std::runtime_error("field container truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_field(std::ostream& out, const Field& f) {
  const Field p = f.has_values() ? f : to_physical(f);
  const Grid& g = p.grid();
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n()));
  put<double>(out, g.period());
  put<std::uint32_t>(out, kLayoutPhysicalRowMajor);
  put<std::uint32_t>(out, 0);
  for (double v : p.values()) put<double>(out, v);
  if (!out) throw std::runtime_error("failed writing field container");
}

Field read_field(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw std::runtime_error("not a field container (bad magic)");
  }
  const auto dim = get<std::uint32_t>(in);
  const auto n = get<std::uint32_t>(in);
  const auto period = get<double>(in);
  const auto layout = get<std::uint32_t>(in);
  (void)get<std::uint32_t>(in);
  if (layout != kLayoutPhysicalRowMajor) throw std::runtime_error("unsupported field layout tag");
  const Grid g(static_cast<int>(dim), static_cast<int>(n), period);
  RealBuffer values(g.size());
  for (auto& v : values) v = get<double>(in);
  return Field::from_values(g, std::move(values));
}

void save_field(const std::string& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_field(out, f);
}

Field load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_field(in);
}

void write_field_csv(std::ostream& out, const Field& f) {
  const Field p = f.has_values() ? f : to_physical(f);
  const Grid& g = p.grid();
  out << std::setprecision(17);
  if (g.dim() == 1) {
    out << "i,x,value\n";
    for (int i = 0; i < g.n(); ++i) out << i << ',' << g.coordinate(i) << ',' << p.value(i) << '\n';
    return;
  }
  out << "i,j,x,y,value\n";
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      out << i << ',' << j << ',' << g.coordinate(i) << ',' << g.coordinate(j) << ',' << p.value(i, j) << '\n';
    }
  }
}

}  // namespace normlab
