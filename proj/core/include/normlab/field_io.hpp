#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "normlab/field.hpp"

namespace normlab {

/// Binary field container, all integers and floats little-endian:
///
///   offset  size  content
///   0       8     magic "NLFIELD1"
///   8       4     uint32 dimension d (1 or 2)
///   12      4     uint32 points per axis n
///   16      8     float64 period L
///   24      4     uint32 layout tag (0 = physical samples, first axis slowest)
///   28      4     uint32 reserved, zero
///   32      8*n^d float64 samples
inline constexpr std::uint32_t kLayoutPhysicalRowMajor = 0;

void write_field(std::ostream& out, const Field& f);
Field read_field(std::istream& in);
void save_field(const std::string& path, const Field& f);
Field load_field(const std::string& path);

/// Debug export: header "i,j,x,y,value" (2D) or "i,x,value" (1D).
void write_field_csv(std::ostream& out, const Field& f);

}  // namespace normlab
